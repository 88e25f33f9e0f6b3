#pragma once

/// Umbrella header.

#include "qreflex/bigint.hpp"
#include "qreflex/classify2d.hpp"
#include "qreflex/cones.hpp"
#include "qreflex/dedup.hpp"
#include "qreflex/double_description.hpp"
#include "qreflex/errors.hpp"
#include "qreflex/io.hpp"
#include "qreflex/lattice_enum.hpp"
#include "qreflex/linalg.hpp"
#include "qreflex/nef_partition.hpp"
#include "qreflex/polytope.hpp"
#include "qreflex/rational.hpp"
#include "qreflex/reflexivity.hpp"
#include "qreflex/toric.hpp"
