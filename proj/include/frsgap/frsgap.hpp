#pragma once

// Umbrella header: the whole library in one include.

#include "frsgap/decoder.hpp"
#include "frsgap/design.hpp"
#include "frsgap/errors.hpp"
#include "frsgap/field.hpp"
#include "frsgap/frs.hpp"
#include "frsgap/harness.hpp"
#include "frsgap/linalg.hpp"
#include "frsgap/pinning.hpp"
#include "frsgap/poly.hpp"
#include "frsgap/rational.hpp"
#include "frsgap/rng.hpp"
#include "frsgap/stitching.hpp"
