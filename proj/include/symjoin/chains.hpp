#pragma once

// Free chain complexes with labeled bases over the integers or a prime
// field, built from presheaves. Suspension is bookkeeping on a shared body
// (degree offset plus a differential sign), never a data copy. Chain maps
// verify their (anti)commuting squares on the full window at construction;
// failure is a hard error.

#include "symjoin/presheaf.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace symjoin {

struct Ring {
    long long p = 0; // 0 = integers, otherwise a prime modulus
    bool is_integers() const { return p == 0; }
    long long reduce(long long v) const {
        if (!p) return v;
        v %= p;
        return v < 0 ? v + p : v;
    }
    bool operator==(const Ring&) const = default;
};

using Vec = std::map<int, long long>; // sparse column vector, index -> coeff

void vec_add(Vec& v, int idx, long long c, const Ring& ring);
Vec vec_scale(const Vec& v, long long c, const Ring& ring);

struct SparseMat {
    int rows = 0, cols = 0;
    std::vector<std::map<int, long long>> col; // col[j]: row -> nonzero value

    SparseMat() = default;
    SparseMat(int r, int c) : rows(r), cols(c), col(c) {}

    void add(int r, int c, long long v, const Ring& ring = {});
    void set_column(int c, const Vec& v, const Ring& ring = {});
    long long at(int r, int c) const;
    bool is_zero() const;
    size_t nonzeros() const;
    bool operator==(const SparseMat&) const = default;

    static SparseMat identity(int n);
};

SparseMat matmul(const SparseMat& a, const SparseMat& b, const Ring& ring = {});
SparseMat matlincomb(const SparseMat& a, long long ca, const SparseMat& b,
                     long long cb, const Ring& ring = {});
Vec matapply(const SparseMat& a, const Vec& v, const Ring& ring = {});

class ChainComplex {
public:
    ChainComplex() = default;

    // diffs[i] maps degree lo+i to degree lo+i-1; diffs[0] has zero rows;
    // asserts d o d = 0 and unique labels per degree
    static ChainComplex from_parts(Ring ring, int lo,
                                   std::vector<std::vector<std::string>> labels,
                                   std::vector<SparseMat> diffs, int shift = 0);

    Ring ring() const;
    int lo() const;
    int hi() const;
    int shift() const { return shift_; }
    bool in_window(int d) const { return d >= lo() && d <= hi(); }

    int rank(int d) const; // 0 outside the window
    const std::vector<std::string>& labels(int d) const;
    const std::string& label(int d, size_t i) const;
    SparseMat diff(int d) const; // C_d -> C_{d-1}, suspension sign applied

    // shares the body; degrees shift by n and the differential picks up (-1)^n
    ChainComplex suspend(int n) const;

private:
    struct Body {
        Ring ring;
        int lo = 0;
        std::vector<std::vector<std::string>> labels;
        std::vector<SparseMat> diffs;
    };
    std::shared_ptr<const Body> body_;
    int offset_ = 0;
    int dsign_ = 1;
    int shift_ = 0;
};

class ChainMap {
public:
    // mats[i]: src degree (src.lo()+i) -> tgt degree (src.lo()+i+degree);
    // construction verifies d_tgt o f = (-1)^degree f o d_src on the window
    ChainMap(ChainComplex src, ChainComplex tgt, int degree,
             std::vector<SparseMat> mats);

    const ChainComplex& src() const { return src_; }
    const ChainComplex& tgt() const { return tgt_; }
    int degree() const { return degree_; }
    const SparseMat& mat(int src_degree) const;
    Vec apply(int src_degree, const Vec& v) const;

private:
    ChainComplex src_, tgt_;
    int degree_;
    std::vector<SparseMat> mats_;
};

ChainMap compose(const ChainMap& a, const ChainMap& b); // a after b

// entry_fn(d, i) = image of basis element i of degree d, as a vector in
// degree d + degree_shift of tgt
ChainMap make_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                        int degree_shift,
                        const std::function<Vec(int, size_t)>& entry_fn);

// ---------------------------------------------------------------- builders

// C_d = k[X(d)], dx = sum_{i=1..d} (-1)^i x.delta_i, degrees 0..window
ChainComplex chains_of(const Presheaf& X, int window, Ring ring = {});

// same with the sub-basis removed
ChainComplex relative_chains(const PresheafPair& P, int window, Ring ring = {});

// simplicial chains of the underlying simplicial set: degree d = X(d+1),
// faces delta_{i+1}, signs (-1)^i for i = 0..d
ChainComplex simplicial_chains(const Presheaf& X, int window, Ring ring = {});

// the degree-0 iso  relative_chains(X, X(0)) = suspend(simplicial_chains, 1)
// (identity on basis; constructing it re-proves that no signs appear)
ChainMap reduced_iso(PresheafPtr X, int window, Ring ring = {});

class TensorComplex {
public:
    TensorComplex(std::vector<ChainComplex> factors);

    // assembled on first use: enumerating every basis element of every total
    // degree is prohibitive for large factors, while encode/decode only need
    // the block offsets
    const ChainComplex& complex() const;
    const ChainComplex& factor(size_t i) const { return factors_[i]; }
    size_t arity() const { return factors_.size(); }
    Ring ring() const { return factors_[0].ring(); }

    size_t encode(const std::vector<int>& degs,
                  const std::vector<size_t>& idxs) const;
    std::pair<std::vector<int>, std::vector<size_t>> decode(int D,
                                                            size_t idx) const;

    // value of the tensor differential on a vector in total degree D,
    // computed blockwise from the factor differentials with Koszul signs;
    // agrees with complex().diff(D) without assembling the full matrix
    Vec diff_apply(int D, const Vec& v) const;

private:
    std::vector<ChainComplex> factors_;
    // per total degree: list of degree tuples (lex) with block offsets
    struct Block {
        std::vector<int> degs;
        size_t offset;
        size_t size;
    };
    const std::vector<Block>& blocks(int D) const;
    mutable std::map<int, std::vector<Block>> blocks_;
    int lo_ = 0, hi_ = 0;
    mutable std::mutex mu_;
    mutable std::shared_ptr<const ChainComplex> complex_;
};

// symmetry C (x) D -> D (x) C, (x,y) -> (-1)^{pq} (y,x)
ChainMap tensor_symmetry(const TensorComplex& CD, const TensorComplex& DC);

// suspension interchange: tensor of suspensions -> suspension of tensor,
// multi-factor form with sign (-1)^{sum_{i<j} n_j deg(x_i)} on bodies
ChainMap suspension_interchange(const TensorComplex& susp,
                                const TensorComplex& plain,
                                const std::vector<int>& offsets);

// Eilenberg-Zilber shuffle map SC(X) (x) SC(Y) -> SC(X x Y)
struct EZShuffle {
    std::shared_ptr<const ProductPresheaf> prod;
    std::shared_ptr<const TensorComplex> source;
    ChainComplex target;
    std::shared_ptr<const ChainMap> map;
};
EZShuffle ez_shuffle(PresheafPtr X, PresheafPtr Y, int window, Ring ring = {});

// shuffle data used by the term-level multi-factor EZ: all ways to split
// {0,...,total-1} into parts of the given sizes, with the inversion sign
struct ShuffleTerm {
    std::vector<std::vector<int>> parts; // ascending within each part
    int sign;
};
std::vector<ShuffleTerm> multishuffles(const std::vector<int>& sizes);

// iterated degeneracy: apply s_{a} for a in ascending order
size_t apply_degeneracies(const Presheaf& X, int d, const std::vector<int>& asc,
                          size_t idx);
OSMor apply_degeneracies(const OSMor& x, const std::vector<int>& asc);

// sign map C(XS) -> C(X), (x, pi) -> sgn(pi) x
ChainMap sign_map(const SigmaFreePresheaf& XS, const Presheaf& X, int window,
                  Ring ring = {});

// unit chain map C(X) -> C(XS), x -> (x, id)
ChainMap eta_chain_map(const Presheaf& X, const SigmaFreePresheaf& XS,
                       int window, Ring ring = {});

} // namespace symjoin
