#pragma once

// Morphism calculus for three finite categories with objects 0,1,2,...
// (object n stands for {1,...,n}):
//   Set  : arbitrary maps                      -> SetMap
//   O    : order-preserving maps               -> OMap
//   OS   : maps with a total order on fibers   -> OSMor
// An OS-morphism is stored in normal form as a pair (f, pi) with f
// order-preserving and pi a permutation of the source; the underlying set
// map is f o pi, and x comes before y in the fiber order iff pi(x) < pi(y).
// All images are 1-based.

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace symjoin {

[[noreturn]] inline void fail(const std::string& msg) {
    throw std::invalid_argument(msg);
}
inline void require(bool ok, const char* msg) {
    if (!ok) fail(msg);
}
inline void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

struct Perm {
    std::vector<int> img; // img[i-1] = pi(i), a permutation of 1..n

    Perm() = default;
    explicit Perm(std::vector<int> v);

    int n() const { return static_cast<int>(img.size()); }
    int operator()(int i) const { return img[i - 1]; }

    static Perm identity(int n);
    Perm inverse() const;
    int sign() const; // (-1)^inversions

    // remove position i (1-based) and renumber the remaining values
    Perm erase_at(int i) const;

    auto operator<=>(const Perm&) const = default;
};

// compose(a, b) = a after b
Perm compose(const Perm& a, const Perm& b);

struct OMap {
    std::vector<int> img; // weakly increasing
    int tgt = 0;

    OMap() = default;
    OMap(std::vector<int> v, int target);

    int src() const { return static_cast<int>(img.size()); }
    int operator()(int i) const { return img[i - 1]; }
    bool is_surjective() const;
    bool is_injective() const;

    static OMap identity(int n);
    // delta(n, i): the injection n-1 -> n missing value i (1 <= i <= n)
    static OMap delta(int n, int i);
    // sigma(n, i): the surjection n+1 -> n repeating value i (1 <= i <= n)
    static OMap sigma(int n, int i);

    auto operator<=>(const OMap&) const = default;
};

OMap compose(const OMap& a, const OMap& b);

struct SetMap {
    std::vector<int> img;
    int tgt = 0;

    SetMap() = default;
    SetMap(std::vector<int> v, int target);

    int src() const { return static_cast<int>(img.size()); }
    int operator()(int i) const { return img[i - 1]; }
    bool is_surjective() const;
    std::vector<int> preimage(int value) const;          // sorted positions
    std::vector<int> preimage_of(const std::vector<int>& values) const;

    static SetMap identity(int n);

    auto operator<=>(const SetMap&) const = default;
};

SetMap compose(const SetMap& a, const SetMap& b);
SetMap as_setmap(const OMap& f);
SetMap as_setmap(const Perm& p);

struct OSMor {
    OMap f;  // order-preserving part
    Perm pi; // fiber-order part, pi.n() == f.src()

    OSMor() = default;
    OSMor(OMap f_, Perm pi_);

    int src() const { return pi.n(); }
    int tgt() const { return f.tgt; }
    SetMap underlying() const;

    static OSMor identity(int n);
    static OSMor natural(const OMap& f); // fiber orders increasing
    static OSMor from_perm(const Perm& p);

    bool is_surjective() const { return f.is_surjective(); }
    bool has_natural_orders() const;

    // fibers of the underlying map listed in fiber order, index 0 <-> value 1
    std::vector<std::vector<int>> ordered_fibers() const;

    auto operator<=>(const OSMor&) const = default;
};

// normal form of a set map with prescribed fiber orders:
// fibers[t-1] lists the preimage of t in its fiber order
OSMor from_fibers(const SetMap& u, const std::vector<std::vector<int>>& fibers);

// normal form of a set map with the increasing fiber orders
OSMor canonical_decompose(const SetMap& u);

// the pair (g*pi, pi*g): pi o g = (pi*g) o (g*pi) with pi*g order-preserving
// and g*pi increasing on every fiber of g
struct StarPair {
    Perm g_star_pi;
    OMap pi_star_g;
};
StarPair star_decompose(const Perm& pi, const OMap& g);

// composition in OS: (f,pi) o (g,sigma) = (f o (pi*g), (g*pi) o sigma)
OSMor compose(const OSMor& a, const OSMor& b);

// order-preserving injection with image I (sorted, values in 1..m)
OMap include_subset(const std::vector<int>& I, int m);

// restriction to the preimage of I: f_I = f o i_{f^-1(I)} (same target) and
// the corestriction f^I (target renumbered to |I|)
struct Restriction {
    OSMor f_I;
    OSMor f_to_I;
};
Restriction restrict(const OSMor& x, const std::vector<int>& I);
OMap restrict_omap(const OMap& f, const std::vector<int>& I);       // f^I
SetMap restrict_setmap(const SetMap& f, const std::vector<int>& I); // f^I

// the unique h with blocks: h agrees with g_i on the fiber f^-1(i), shifted
// past the targets of g_1..g_{i-1}; f contributes only its fibers
OSMor block_assemble(const SetMap& f, const std::vector<OSMor>& gs);
OMap block_assemble(const OMap& f, const std::vector<OMap>& gs);

// presheaf faces/degeneracies: x o delta_i resp. x o sigma_i
OSMor face(const OSMor& x, int i);
OSMor degeneracy(const OSMor& x, int i);

std::string to_string(const Perm& p);
std::string to_string(const OMap& f);
std::string to_string(const SetMap& f);
std::string to_string(const OSMor& x); // "u=[...] ; pi=[...]"

// enumeration helpers for exhaustive checks
std::vector<Perm> all_perms(int n);
// lexicographic rank among all permutations of the same size (identity = 0)
size_t perm_lex_rank(const Perm& p);
Perm perm_of_lex_rank(int n, size_t rank);
std::vector<OMap> all_omaps(int k, int n);
std::vector<SetMap> all_setmaps(int k, int n);
std::vector<OSMor> all_osmors(int k, int n);
std::vector<OSMor> all_surjective_osmors(int k, int n);
std::vector<std::vector<int>> all_subsets(int m); // sorted value lists

} // namespace symjoin
