#pragma once

// Exact homology of bounded chain complexes: Smith normal form over the
// integers (arbitrary-precision, no modular shortcuts), Gaussian rank over
// a prime field, and canonical Hermite column forms for comparing integer
// column spans of matrices.

#include "symjoin/chains.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace symjoin {

using bigint = boost::multiprecision::cpp_int;

// nonzero invariant factors d_1 | d_2 | ..., all positive
std::vector<bigint> smith_invariants(const SparseMat& a);

long long matrix_rank_z(const SparseMat& a);
long long matrix_rank_fp(const SparseMat& a, long long p);

struct HomologyZ {
    long long free_rank = 0;
    std::vector<bigint> torsion; // invariant factors > 1, ascending divisibility
    bool operator==(const HomologyZ&) const = default;
};
std::string to_string(const HomologyZ& h);

// needs degrees d and d+1 inside the window (d+1 may sit above hi, in which
// case the incoming differential is zero)
HomologyZ homology_z(const ChainComplex& c, int d);
long long homology_dim_fp(const ChainComplex& c, int d, long long p);

// canonical column-style Hermite normal form: pivots positive, entries to
// the right of a pivot reduced into [0, pivot), zero columns dropped
std::vector<std::vector<bigint>> hermite_columns(const SparseMat& a);

// do the columns of a and b generate the same subgroup of Z^rows?
bool same_column_span_z(const SparseMat& a, const SparseMat& b);

} // namespace symjoin
