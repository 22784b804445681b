#pragma once

#include "pairsim/bounds.hpp"
#include "pairsim/errors.hpp"
#include "pairsim/exactnum.hpp"
#include "pairsim/graphs.hpp"
#include "pairsim/linalg.hpp"
#include "pairsim/polytope.hpp"
#include "pairsim/schemes.hpp"
#include "pairsim/spectral.hpp"
