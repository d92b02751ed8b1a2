#pragma once

// Umbrella header for the fatpoints library.

#include "fatpoints/field.hpp"
#include "fatpoints/poly.hpp"
#include "fatpoints/matrix.hpp"
#include "fatpoints/random.hpp"
#include "fatpoints/linsys.hpp"
#include "fatpoints/geometry.hpp"
#include "fatpoints/configs.hpp"
#include "fatpoints/serialize.hpp"
#include "fatpoints/analysis.hpp"
#include "fatpoints/cache.hpp"
#include "fatpoints/svg.hpp"
