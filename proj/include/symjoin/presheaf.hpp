#pragma once

// Finite presheaves on the order category O and its fiber-ordered extension.
// A presheaf exposes per-degree cardinalities, a right action of morphisms
// (contravariant: an element in degree m pulled back along k -> m lands in
// degree k) and printable labels. Indices are opaque; structure-aware
// wrappers own the encoding.

#include "symjoin/morphisms.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace symjoin {

enum class Variance { O, OSigma };

class Presheaf {
public:
    explicit Presheaf(Variance v) : variance(v) {}
    virtual ~Presheaf() = default;

    const Variance variance;

    virtual size_t card(int degree) const = 0;
    // idx indexes degree m.tgt(); the result indexes degree m.src().
    // O-variance presheaves only accept morphisms with natural fiber orders.
    virtual size_t act(size_t idx, const OSMor& m) const = 0;
    virtual std::string label(int degree, size_t idx) const = 0;

    size_t act(size_t idx, const OMap& m) const { return act(idx, OSMor::natural(m)); }

protected:
    void check_variance(const OSMor& m) const {
        if (variance == Variance::O)
            require(m.pi == Perm::identity(m.pi.n()),
                    "O-variance presheaf acted on by a genuinely fiber-ordered morphism");
    }
};

using PresheafPtr = std::shared_ptr<const Presheaf>;

// representable presheaf: degree k holds all morphisms k -> n of the category
class StandardPresheaf : public Presheaf {
public:
    StandardPresheaf(Variance v, int n);
    size_t card(int degree) const override;
    size_t act(size_t idx, const OSMor& m) const override;
    std::string label(int degree, size_t idx) const override;

    int n() const { return n_; }
    const OSMor& element(int degree, size_t idx) const;
    size_t index_of(const OSMor& x) const;

private:
    struct Table {
        std::vector<OSMor> elems;
        std::map<OSMor, size_t> index;
    };
    const Table& table(int degree) const;
    int n_;
    mutable std::mutex mu_;
    mutable std::map<int, Table> tables_;
};

// one element in every degree
class TerminalPresheaf : public Presheaf {
public:
    explicit TerminalPresheaf(Variance v) : Presheaf(v) {}
    size_t card(int) const override { return 1; }
    size_t act(size_t, const OSMor&) const override { return 0; }
    std::string label(int, size_t) const override { return "*"; }
};

// free fiber-ordered presheaf on an order presheaf: degree k holds pairs
// (x, pi) with x in X(k), pi a permutation of k; index = base * k! + rank(pi)
class SigmaFreePresheaf : public Presheaf {
public:
    explicit SigmaFreePresheaf(PresheafPtr base);
    size_t card(int degree) const override;
    size_t act(size_t idx, const OSMor& m) const override;
    std::string label(int degree, size_t idx) const override;

    const Presheaf& base() const { return *base_; }
    size_t encode(int degree, size_t base_idx, const Perm& pi) const;
    std::pair<size_t, Perm> decode(int degree, size_t idx) const;

private:
    PresheafPtr base_;
};

class ProductPresheaf : public Presheaf {
public:
    explicit ProductPresheaf(std::vector<PresheafPtr> factors);
    size_t card(int degree) const override;
    size_t act(size_t idx, const OSMor& m) const override;
    std::string label(int degree, size_t idx) const override;

    size_t arity() const { return factors_.size(); }
    const Presheaf& factor(size_t i) const { return *factors_[i]; }
    std::vector<size_t> decode(int degree, size_t idx) const;
    size_t encode(int degree, const std::vector<size_t>& parts) const;

private:
    std::vector<PresheafPtr> factors_;
};

// simplicial complex given by facets; degree k of the presheaf holds the
// weakly increasing k-tuples of vertices spanning a face (the one-point
// augmentation of the associated simplicial set: degree 0 is a point).
// aug_points = 2 gives the two-point augmentation used to test that chain
// constructions do not depend on the augmentation.
class FacetComplex : public Presheaf {
public:
    FacetComplex(int vertices, std::vector<std::vector<int>> facets,
                 int aug_points = 1);
    size_t card(int degree) const override;
    size_t act(size_t idx, const OSMor& m) const override;
    std::string label(int degree, size_t idx) const override;

    int vertices() const { return vertices_; }
    const std::vector<int>& tuple(int degree, size_t idx) const;
    size_t index_of_tuple(const std::vector<int>& t) const;
    bool spans_face(const std::vector<int>& tuple) const;

private:
    struct Table {
        std::vector<std::vector<int>> elems;
        std::map<std::vector<int>, size_t> index;
    };
    const Table& table(int degree) const;
    int vertices_;
    int aug_points_;
    std::vector<std::vector<bool>> face_; // face_[k]: bitmask-indexed support sets
    std::vector<std::vector<int>> facets_;
    mutable std::mutex mu_;
    mutable std::map<int, Table> tables_;
};

// forget the fiber orders: view a fiber-ordered presheaf as an order presheaf
class OForgetPresheaf : public Presheaf {
public:
    explicit OForgetPresheaf(PresheafPtr inner);
    size_t card(int degree) const override;
    size_t act(size_t idx, const OSMor& m) const override;
    std::string label(int degree, size_t idx) const override;
    const Presheaf& inner() const { return *inner_; }

private:
    PresheafPtr inner_;
};

// pair (X, A) with A specified by a membership predicate, closed under action
struct PresheafPair {
    PresheafPtr total;
    std::function<bool(int degree, size_t idx)> in_sub;
};

// convenience constructors
PresheafPtr standard_object(Variance v, int n);
PresheafPtr sigma_free(PresheafPtr base);
PresheafPtr product(std::vector<PresheafPtr> factors);
PresheafPtr from_facets(int vertices, std::vector<std::vector<int>> facets,
                        int aug_points = 1);

// (P_n, morphisms with non-surjective underlying map)
PresheafPair boundary_pair(Variance v, int n);
// (X, X(0)); degree 0 is a retract point for every presheaf here
PresheafPair basepoint_pair(PresheafPtr X);

// unit X -> XSigma at the index level: x |-> (x, id)
size_t eta_index(const SigmaFreePresheaf& XS, int degree, size_t base_idx);

// simplicial-level access (degree d of the underlying simplicial set is
// degree d+1 of the order presheaf); face/degeneracy indices are 0-based
size_t u_card(const Presheaf& X, int d);
size_t u_face(const Presheaf& X, int d, int i, size_t idx);
size_t u_degeneracy(const Presheaf& X, int d, int i, size_t idx);

// fixtures
PresheafPtr fixture_interval();          // 1-simplex on vertices {1,2}
PresheafPtr fixture_triangle();          // full 2-simplex on {1,2,3}
PresheafPtr fixture_circle();            // boundary of the triangle
PresheafPtr fixture_tetrahedron();       // full 3-simplex on {1,2,3,4}
PresheafPtr fixture_sphere2();           // boundary of the tetrahedron
PresheafPtr fixture_rp2();               // 6-vertex projective plane

} // namespace symjoin
