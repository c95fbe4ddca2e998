#pragma once

#include "latpoly/commutation.hpp"
#include "latpoly/harness.hpp"
#include "latpoly/io.hpp"
#include "latpoly/lattice.hpp"
#include "latpoly/polynomial.hpp"
#include "latpoly/structure.hpp"
