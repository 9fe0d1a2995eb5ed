#pragma once

// Umbrella header: exact invariants of power series with a fixed point at
// the origin, over prime fields, their extensions, the rationals, and
// Laurent series coefficient fields.

#include "resit/bigint.hpp"
#include "resit/bivariate.hpp"
#include "resit/common.hpp"
#include "resit/descriptor.hpp"
#include "resit/dynamics.hpp"
#include "resit/errors.hpp"
#include "resit/expr.hpp"
#include "resit/extension_field.hpp"
#include "resit/index.hpp"
#include "resit/laurent_field.hpp"
#include "resit/multi_index.hpp"
#include "resit/prime_field.hpp"
#include "resit/random.hpp"
#include "resit/rational_field.hpp"
#include "resit/selftest.hpp"
#include "resit/series.hpp"
#include "resit/ultrametric.hpp"
#include "resit/verify.hpp"
