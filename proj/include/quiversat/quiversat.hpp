#pragma once

// Umbrella header.

#include "cnf.hpp"
#include "field.hpp"
#include "harness.hpp"
#include "linalg.hpp"
#include "quiver.hpp"
#include "reduction.hpp"
#include "roots.hpp"
#include "serialize.hpp"
