/// Umbrella header for the robpareto library.
#pragma once

#include "robpareto/core.hpp"
#include "robpareto/distro.hpp"
#include "robpareto/efficiency.hpp"
#include "robpareto/errors.hpp"
#include "robpareto/geometry.hpp"
#include "robpareto/io.hpp"
#include "robpareto/linprog.hpp"
#include "robpareto/matrix.hpp"
#include "robpareto/parallel.hpp"
#include "robpareto/phantom.hpp"
#include "robpareto/report.hpp"
#include "robpareto/scalarize.hpp"
#include "robpareto/scalarizer_spec.hpp"
#include "robpareto/solve.hpp"
