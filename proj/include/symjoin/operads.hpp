#pragma once

// Chain operads on the surjective symmetric morphisms. The first layer, a,
// is the once-desuspended relative chain complex of the symmetric
// representable: a(n) in degree d has basis the surjective morphisms
// (d+1) -> n, composition runs a multi-factor shuffle map into the product
// followed by the morphism-level composition product, with shuffle signs
// only. The second layer, j, regrades the same bases to degree
// d = source - n and twists by the sign representation; all of its signs
// are produced mechanically from the suspension bookkeeping, never entered
// as closed forms.

#include "symjoin/chains.hpp"
#include "symjoin/homology.hpp"
#include "symjoin/join.hpp"

namespace symjoin {

// a homogeneous integer combination of surjective morphisms with a common
// source size; the grading convention is supplied by the a_* / j_* family
// applied to it
struct OperadElement {
    int arity = 0;
    int degree = 0;
    std::map<OSMor, long long> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const OperadElement&) const = default;
};

OperadElement operator+(OperadElement a, const OperadElement& b);
OperadElement operator-(OperadElement a, const OperadElement& b);
OperadElement operator*(long long c, OperadElement a);
std::string to_string(const OperadElement& e);

// all surjective morphisms src -> arity, ordered lexicographically by
// (order-preserving part, fiber permutation); this order fixes every
// exported matrix
std::vector<OSMor> surjective_basis(int src, int arity);

// drops the fiber orders of every term (the value of composing with the
// point collapses in all inner slots)
OperadElement naturalize(const OperadElement& e);

// ------------------------------------------------------------------ layer a
// degree d holds the surjective morphisms (d+1) -> n

OperadElement a_from(const OSMor& f, long long coeff = 1);
std::vector<OSMor> a_basis(int arity, int degree);
OperadElement a_zero(int arity, int degree);
OperadElement a_unit(); // the identity morphism, degree 0, arity 1

OperadElement a_diff(const OperadElement& e);
OperadElement a_act(const OperadElement& e, const Perm& pi); // right action
OperadElement a_compose(const OperadElement& outer,
                        const std::vector<OperadElement>& inners);

// ------------------------------------------------------------------ layer j
// degree d holds the surjective morphisms (d+n) -> n

OperadElement j_from(const OSMor& f, long long coeff = 1);
std::vector<OSMor> j_basis(int arity, int degree);
OperadElement j_zero(int arity, int degree);
OperadElement j_unit();

OperadElement j_diff(const OperadElement& e);
OperadElement j_act(const OperadElement& e, const Perm& pi); // sign-twisted
OperadElement j_compose(const OperadElement& outer,
                        const std::vector<OperadElement>& inners);

// degree-0 part only: permutations with the sign of their fiber part
long long augmentation(const OperadElement& e);

// ------------------------------------------------------- sign bookkeeping
// sign of evaluating (phi_1 (x) ... (x) phi_n) on (x_1 (x) ... (x) x_n):
// phi_j moves past x_1, ..., x_{j-1}
int tensor_eval_sign(const std::vector<int>& map_degrees,
                     const std::vector<int>& arg_degrees);

// total factor relating a j-composition to the underlying a-composition,
// i.e. the suspension bookkeeping of the coalgebra correspondence; its
// degree dependence is forced by the chain-map identity and its constant
// part by multiplicativity of the sign augmentation in degree 0
int lambda_twist_sign(int outer_arity, const std::vector<int>& inner_arities,
                      int outer_a_degree, const std::vector<int>& inner_a_degrees);

// sign of rearranging x_1 (x) ... (x) x_n into x_{order[0]+1} (x) ...;
// order is 0-based and lists original positions
int koszul_reorder_sign(const std::vector<int>& degrees,
                        const std::vector<int>& order);

// ------------------------------------------------------- permutation layer
// composite in the canonical permutation operad: sigma rearranges blocks of
// the given sizes, tau_i permutes within block i.  A degree-0 basis key of j
// with underlying map u corresponds to the permutation u^{-1}; under that
// pairing j_compose(sigma; taus) lands on the composite of the paired data,
// scaled by degree0_sign of the sigma-permuted shape times sgn(sigma) times
// the sign of the block rearrangement
Perm perm_operad_compose(const Perm& sigma, const std::vector<Perm>& taus);

// the stable sign by which the degree-0 part of j differs from the
// permutation operad, computed on the identity tuple
int degree0_sign(int arity, const std::vector<int>& inner_arities);

// --------------------------------------------------------------- complexes
// degrees 0..window of j(n) as a chain complex over the integers, basis in
// the export order
ChainComplex j_complex(int arity, int window);

// --------------------------------------------------------------- reports
struct IdentityReport {
    std::string identity;
    size_t instances = 0;
    size_t failures = 0;
    std::vector<std::string> counterexamples; // capped at a handful
};

struct AxiomReport {
    int max_arity = 0;
    int max_total_degree = 0;
    std::vector<IdentityReport> lines;
    bool ok() const;
};

// exhaustive sweep over basis tuples: differentials square to zero, the
// compositions are chain maps, associativity with its regrouping sign, both
// equivariance identities, unit laws (the outer one strict, the inner one
// strict on naturally ordered elements and the naturalization in general),
// and the degree-0 comparison with the permutation operad; arities bounded
// by max_arity, summed degrees of each tuple bounded by max_total_degree
AxiomReport verify_operad_axioms(int max_arity, int max_total_degree);

struct EinfinityReport {
    int arity = 0;
    int window = 0;
    std::vector<size_t> basis_sizes;  // degrees 0..window
    std::vector<HomologyZ> homology;  // degrees 0..window-1
    bool sigma_free = false;          // no nontrivial permutation fixes a basis element
    bool augmentation_ok = false;     // sgn kills d(degree 1), hits 1
    bool splitting_ok = false;        // im(d_1) = span{id - sgn(pi) pi}
    bool ok() const;
};

// homological certificate for j(n) in the window: degree-0 homology is the
// integers, degrees 1..window-1 vanish, the basis is a free symmetric-group
// set, and the sign augmentation splits off the image of d_1
EinfinityReport certify_einfinity(int arity, int window);

} // namespace symjoin
