#pragma once

// Joins of presheaves. In degree m the join is a disjoint sum over summand
// maps phi from m to the number of factors (order-preserving maps for the
// plain join of O-variance factors, arbitrary set maps for the symmetric
// join) of one part per factor, the i-th living in degree |phi^-1(i)|.
// A morphism acts by composing it into the summand and restricting it to
// each fiber.

#include "symjoin/presheaf.hpp"

#include <mutex>

namespace symjoin {

class JoinPresheaf : public Presheaf {
public:
    // kind O: factors O-variance, summands order-preserving;
    // kind OSigma: factors OSigma-variance, summands arbitrary set maps
    JoinPresheaf(Variance kind, std::vector<PresheafPtr> factors);

    size_t card(int degree) const override;
    size_t act(size_t idx, const OSMor& m) const override;
    std::string label(int degree, size_t idx) const override;

    size_t arity() const { return factors_.size(); }
    const PresheafPtr& factor(size_t i) const { return factors_[i]; }

    struct Element {
        SetMap summand;            // order-preserving when the kind is O
        std::vector<size_t> parts; // parts[i]: factor i, degree |summand^-1(i+1)|
        bool operator==(const Element&) const = default;
    };
    Element decode(int degree, size_t idx) const;
    size_t encode(const Element& e) const; // degree = e.summand.src()

    // act with explicit per-fiber restrictions, the workhorse behind act()
    Element act_element(const Element& e, const OSMor& m) const;

private:
    struct Table {
        std::vector<SetMap> summands;
        std::map<SetMap, size_t> summand_index;
        std::vector<size_t> offsets;     // block start per summand
        std::vector<std::vector<size_t>> part_cards;
        size_t total = 0;
    };
    const Table& table(int degree) const;

    std::vector<PresheafPtr> factors_;
    mutable std::mutex mu_;
    mutable std::map<int, Table> tables_;
};

std::shared_ptr<const JoinPresheaf> join(Variance kind,
                                         std::vector<PresheafPtr> factors);

// ------------------------------------------------- canonical identifications

// the symmetric join of the freed factors against the freed plain join:
//   J^Sigma(X_1 Sigma, ..., X_n Sigma)  =  (J^O(X_1, ..., X_n)) Sigma
// on elements: (phi; (x_i, pi_i)) -> ((g_phi; x), (pi_1 + ... + pi_n) o pi_phi)
// where phi = g_phi o pi_phi is the normal form of the summand
struct SigmaFreeJoinIso {
    std::shared_ptr<const JoinPresheaf> sigma_join;
    std::shared_ptr<const JoinPresheaf> plain_join;
    std::shared_ptr<const SigmaFreePresheaf> free_join;

    size_t forward(int degree, size_t idx) const;  // sigma_join -> free_join
    size_t backward(int degree, size_t idx) const; // free_join -> sigma_join
};
SigmaFreeJoinIso sigma_free_join_iso(std::vector<PresheafPtr> bases);

// flattening of a nested join: outer summand phi and inner summands g_i
// assemble to phi<g_1, ..., g_n>; inverse by unique block decomposition
struct NestedJoinIso {
    std::shared_ptr<const JoinPresheaf> nested; // J(J(group_1), ..., J(group_n))
    std::shared_ptr<const JoinPresheaf> flat;   // J(all factors, concatenated)

    size_t flatten(int degree, size_t idx) const;
    size_t unflatten(int degree, size_t idx) const;
};
NestedJoinIso nested_join_iso(Variance kind,
                              std::vector<std::vector<PresheafPtr>> groups);

// reindexing along a permutation of the factors: summand sigma o phi, part
// sigma^-1(i) moved to slot i; tgt must be the join of the permuted factors,
// factor i of tgt equal to factor sigma^-1(i) of src
size_t t_sigma(const JoinPresheaf& src, const JoinPresheaf& tgt,
               const Perm& sigma, int degree, size_t idx);

// block assembly for plain set maps, the summand-level flattening
SetMap block_assemble_set(const SetMap& f, const std::vector<SetMap>& gs);
// block decomposition: recover (phi; g_1..g_n) from h = phi<g> given the
// target sizes of the g_i
std::pair<SetMap, std::vector<SetMap>> block_decompose_set(
    const SetMap& h, const std::vector<int>& tgts);

// ------------------------------------------------------------ canonical maps

// alpha(f; x_1..x_n): the element of the symmetric join with summand the
// underlying map of f and parts the fiber restrictions x_i o i_{f^-1(i)};
// x_i indexes factor i in degree f.src()
size_t alpha(const JoinPresheaf& j, const OSMor& f, const std::vector<size_t>& xs);

// morphism-level composition product:
//   psi(f; g_1..g_n) = f<g_i o i_{f^-1(i)}>, target sum of the g targets
OSMor psi(const OSMor& f, const std::vector<OSMor>& gs);

// set-level coaction of arity n: alpha along the diagonal,
//   x -> (underlying f; x o i_{f^-1(1)}, ..., x o i_{f^-1(n)})
size_t coaction_set_level(const JoinPresheaf& j, const OSMor& f, size_t x_idx);

// join of pairs: a summand is degenerate when it fails to be surjective or
// when some part falls into the corresponding subobject
PresheafPair relative_join(Variance kind, std::vector<PresheafPair> pairs);

// enumeration helper: all set maps m -> r (kind OSigma) or order-preserving
// maps m -> r (kind O), in the lex order the join tables use
std::vector<SetMap> join_summands(Variance kind, int m, int r);

} // namespace symjoin
