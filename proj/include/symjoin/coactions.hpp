#pragma once

// Cooperations of the two operad layers on the chains of a presheaf. A key
// of the desuspended layer acts on relative chains through a six-stage
// composite: the unit into the freed presheaf, the shuffle product against
// the key, the set-level coaction into the symmetric join, the join normal
// form, the sign quasi-isomorphism, and the identification of the relative
// chains of a plain join with the tensor product of the factors. The
// regraded layer conjugates the same composite through the suspension that
// matches relative degree q with simplicial degree q-1. On top of the
// binary cooperations sit the cup-i coproducts, their dual cochain
// products, and the mod-2 Steenrod squares.

#include "symjoin/chains.hpp"
#include "symjoin/join.hpp"
#include "symjoin/operads.hpp"

#include <optional>

namespace symjoin {

// cooperations of the desuspended layer on the relative chains of an order
// presheaf X; a key of a-degree p sends relative degree q to total tensor
// degree p + q, which fits the window exactly when p + q - arity + 1 does
class ACoaction {
public:
    ACoaction(int arity, PresheafPtr X, int window, Ring ring = {});

    int arity() const { return n_; }
    int window() const { return window_; }
    Ring ring() const { return ring_; }
    const PresheafPtr& space() const { return X_; }
    const ChainComplex& relative() const { return rel_; }
    const TensorComplex& tensor() const;

    // value on a single basis key (surjective, target = arity) and a single
    // relative basis element; arity 0 keys give the augmentation, index 0
    // standing for the unit of the ground ring
    Vec apply_key(const OSMor& f, int q, size_t idx) const;
    // linear extension over a homogeneous element of the desuspended layer
    Vec apply(const OperadElement& xi, int q, const Vec& x) const;

private:
    int n_;
    PresheafPtr X_;
    int window_;
    Ring ring_;
    ChainComplex rel_;
    std::optional<SigmaFreeJoinIso> iso_;
    std::shared_ptr<const SigmaFreePresheaf> XS_;
    std::optional<TensorComplex> tensor_;
};

// cooperations of the regraded layer on simplicial chains: the conjugate of
// the desuspended machine under relative degree = simplicial degree + 1,
// with the interchange signs of pushing the suspensions out of the tensor
class JCoalgebra {
public:
    JCoalgebra(int arity, PresheafPtr Y, int window, Ring ring = {});

    int arity() const { return n_; }
    int window() const { return window_; }
    Ring ring() const { return ring_; }
    const PresheafPtr& space() const { return a_.space(); }
    const ChainComplex& chains() const { return chains_; }
    const TensorComplex& tensor() const;
    const ACoaction& desuspended() const { return a_; }

    // value on a single basis key of the regraded layer (j-degree
    // f.src() - arity) and a single simplicial basis element of degree q
    Vec apply_key(const OSMor& f, int q, size_t idx) const;
    Vec apply(const OperadElement& xi, int q, const Vec& y) const;

private:
    int n_;
    int window_;
    Ring ring_;
    ACoaction a_;
    ChainComplex chains_;
    std::optional<TensorComplex> tensor_;
};

// the alternating surjection 1,2,1,2,... of length i+2 with increasing
// fiber orders; of j-degree i, it generates the cup-i coproduct
OSMor cup_generator(int i);

// comparison of the degree-zero binary cooperation against the front/back
// diagonal: in output bidegree (r, s) the machine is this multiple of
// front (x) back. Measured once on the interval and the triangle and frozen
// here; the measurement came out +1 in every bidegree.
int aw_calibration_sign(int r, int s);

// the cup-i coproduct on a vector of simplicial degree q, landing in tensor
// degree q + i; M must be binary
Vec cup_i(const JCoalgebra& M, int i, int q, const Vec& y);

// -------------------------------------------------------------- cochains
// a cochain is stored by its coordinates against the basis duals in one
// degree; products are transposed cooperations with the Koszul sign of
// evaluating a tensor of cochains on a tensor of chains (over the integers
// this is tensor_eval_sign; mod 2 no signs survive)

struct Cochain {
    int degree = 0;
    Vec v;
};

long long evaluate(const Cochain& a, const Vec& c, Ring ring);

// transpose differential, (delta a)(c) = a(dc) with no extra sign
Cochain coboundary(const ChainComplex& C, const Cochain& a);

// (a_1 (x) ... (x) a_n) evaluated through the cooperation of the key; the
// result degree is sum of the cochain degrees minus the key's j-degree
Cochain dual_product(const JCoalgebra& M, const OperadElement& key,
                     const std::vector<Cochain>& as);

// ------------------------------------------------- mod-2 cohomology layer
// these require the machine ring to be the field with two elements and the
// relevant degree to sit strictly below the window, so that cocycles can be
// certified against the full incoming differential

bool is_cocycle_f2(const JCoalgebra& M, const Cochain& a);

// representing cocycles for a basis of the degree-t cohomology
std::vector<Cochain> cohomology_basis_f2(const JCoalgebra& M, int t);

// coordinates of a cocycle against cohomology_basis_f2 of its degree
std::vector<int> class_coordinates_f2(const JCoalgebra& M, const Cochain& a);

// Sq^i of a cocycle of degree d: the class of x cup_{d-i} x in degree d+i,
// zero above the degree; coordinates against the degree d+i basis
std::vector<int> steenrod_square(const JCoalgebra& M, int i, const Cochain& x);

} // namespace symjoin
