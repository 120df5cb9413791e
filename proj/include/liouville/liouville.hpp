#pragma once

// Quadratic Liouville structures on symplectic vector spaces: the canonical
// one-form shifted by the differential of a homogeneous quadratic, its
// Liouville field and flow, and machine verification of the automorphism
// groups of the three resolved square classes A² = 0, +I, -I.

#include "liouville/automorphism.hpp"
#include "liouville/errors.hpp"
#include "liouville/flow.hpp"
#include "liouville/instances.hpp"
#include "liouville/json_io.hpp"
#include "liouville/linalg.hpp"
#include "liouville/polynomial.hpp"
#include "liouville/quadratic.hpp"
#include "liouville/report.hpp"
#include "liouville/rng.hpp"
#include "liouville/scalar.hpp"
#include "liouville/smooth_map.hpp"
#include "liouville/symplectic.hpp"
