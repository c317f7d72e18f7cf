#pragma once

// Umbrella header.

#include "operadlab/checks.hpp"
#include "operadlab/generate.hpp"
#include "operadlab/homology.hpp"
#include "operadlab/lie_vector.hpp"
#include "operadlab/operad.hpp"
#include "operadlab/partition.hpp"
#include "operadlab/rational.hpp"
#include "operadlab/sparse_matrix.hpp"
#include "operadlab/splitting.hpp"
#include "operadlab/suites.hpp"
#include "operadlab/tpoly.hpp"
#include "operadlab/tree.hpp"
