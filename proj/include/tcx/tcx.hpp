#pragma once

// Umbrella header: the whole library except the CLI layer.

#include "errors.hpp"
#include "vertex_set.hpp"
#include "complex.hpp"
#include "collapse.hpp"
#include "isomorphism.hpp"
#include "homotopy.hpp"
#include "product.hpp"
#include "contiguity.hpp"
#include "class_search.hpp"
#include "cover.hpp"
#include "invariants.hpp"
#include "io.hpp"
