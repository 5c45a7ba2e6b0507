#include "symjoin/presheaf.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>

namespace symjoin {

// ------------------------------------------------------------- Standard

StandardPresheaf::StandardPresheaf(Variance v, int n) : Presheaf(v), n_(n) {
    require(n >= 0, "StandardPresheaf: negative object");
}

const StandardPresheaf::Table& StandardPresheaf::table(int degree) const {
    require(degree >= 0, "StandardPresheaf: negative degree");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(degree);
    if (it != tables_.end()) return it->second;
    Table t;
    if (variance == Variance::OSigma) {
        t.elems = all_osmors(degree, n_);
    } else {
        for (const OMap& f : all_omaps(degree, n_))
            t.elems.push_back(OSMor::natural(f));
    }
    for (size_t i = 0; i < t.elems.size(); ++i) t.index[t.elems[i]] = i;
    return tables_.emplace(degree, std::move(t)).first->second;
}

size_t StandardPresheaf::card(int degree) const { return table(degree).elems.size(); }

const OSMor& StandardPresheaf::element(int degree, size_t idx) const {
    const Table& t = table(degree);
    require(idx < t.elems.size(), "StandardPresheaf: index out of range");
    return t.elems[idx];
}

size_t StandardPresheaf::index_of(const OSMor& x) const {
    const Table& t = table(x.src());
    auto it = t.index.find(x);
    require(it != t.index.end(), "StandardPresheaf: element not found");
    return it->second;
}

size_t StandardPresheaf::act(size_t idx, const OSMor& m) const {
    check_variance(m);
    OSMor y = compose(element(m.tgt(), idx), m);
    return index_of(y);
}

std::string StandardPresheaf::label(int degree, size_t idx) const {
    const OSMor& x = element(degree, idx);
    if (variance == Variance::O) return to_string(x.f);
    return to_string(x);
}

// ------------------------------------------------------------- SigmaFree

SigmaFreePresheaf::SigmaFreePresheaf(PresheafPtr base)
    : Presheaf(Variance::OSigma), base_(std::move(base)) {
    require(base_ != nullptr, "SigmaFreePresheaf: null base");
    require(base_->variance == Variance::O,
            "SigmaFreePresheaf: base must be an order presheaf");
}

static size_t factorial(int k) {
    size_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<size_t>(i);
    return f;
}

size_t SigmaFreePresheaf::card(int degree) const {
    return base_->card(degree) * factorial(degree);
}

size_t SigmaFreePresheaf::encode(int degree, size_t base_idx, const Perm& pi) const {
    assert(pi.n() == degree);
    return base_idx * factorial(degree) + perm_lex_rank(pi);
}

std::pair<size_t, Perm> SigmaFreePresheaf::decode(int degree, size_t idx) const {
    size_t f = factorial(degree);
    return {idx / f, perm_of_lex_rank(degree, idx % f)};
}

size_t SigmaFreePresheaf::act(size_t idx, const OSMor& m) const {
    // (x, pi) . (g, sigma) = (x . (pi*g), (g*pi) o sigma)
    auto [x, pi] = decode(m.tgt(), idx);
    StarPair sp = star_decompose(pi, m.f);
    size_t y = base_->act(x, OSMor::natural(sp.pi_star_g));
    return encode(m.src(), y, compose(sp.g_star_pi, m.pi));
}

std::string SigmaFreePresheaf::label(int degree, size_t idx) const {
    auto [x, pi] = decode(degree, idx);
    return "(" + base_->label(degree, x) + " ; pi=" + to_string(pi) + ")";
}

// ------------------------------------------------------------- Product

ProductPresheaf::ProductPresheaf(std::vector<PresheafPtr> factors)
    : Presheaf(factors.empty() ? Variance::O : factors.front()->variance),
      factors_(std::move(factors)) {
    require(!factors_.empty(), "ProductPresheaf: needs at least one factor");
    for (const auto& f : factors_)
        require(f->variance == variance, "ProductPresheaf: variance mismatch");
}

size_t ProductPresheaf::card(int degree) const {
    size_t c = 1;
    for (const auto& f : factors_) c *= f->card(degree);
    return c;
}

std::vector<size_t> ProductPresheaf::decode(int degree, size_t idx) const {
    std::vector<size_t> parts(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
        size_t c = factors_[i]->card(degree);
        parts[i] = idx % c;
        idx /= c;
    }
    return parts;
}

size_t ProductPresheaf::encode(int degree, const std::vector<size_t>& parts) const {
    assert(parts.size() == factors_.size());
    size_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        size_t c = factors_[i]->card(degree);
        assert(parts[i] < c);
        idx = idx * c + parts[i];
    }
    return idx;
}

size_t ProductPresheaf::act(size_t idx, const OSMor& m) const {
    std::vector<size_t> parts = decode(m.tgt(), idx);
    for (size_t i = 0; i < factors_.size(); ++i)
        parts[i] = factors_[i]->act(parts[i], m);
    return encode(m.src(), parts);
}

std::string ProductPresheaf::label(int degree, size_t idx) const {
    std::vector<size_t> parts = decode(degree, idx);
    std::string out = "(";
    for (size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += ", ";
        out += factors_[i]->label(degree, parts[i]);
    }
    return out + ")";
}

// ------------------------------------------------------------- FacetComplex

FacetComplex::FacetComplex(int vertices, std::vector<std::vector<int>> facets,
                           int aug_points)
    : Presheaf(Variance::O),
      vertices_(vertices),
      aug_points_(aug_points),
      facets_(std::move(facets)) {
    require(vertices >= 0, "FacetComplex: negative vertex count");
    require(aug_points == 1 || aug_points == 2, "FacetComplex: 1 or 2 base points");
    for (auto& f : facets_) {
        std::sort(f.begin(), f.end());
        require(std::adjacent_find(f.begin(), f.end()) == f.end(),
                "FacetComplex: facet with repeated vertex");
        for (int v : f)
            require(v >= 1 && v <= vertices, "FacetComplex: vertex out of range");
    }
}

bool FacetComplex::spans_face(const std::vector<int>& t) const {
    std::vector<int> support = t;
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    if (support.empty()) return true;
    for (const auto& f : facets_)
        if (std::includes(f.begin(), f.end(), support.begin(), support.end()))
            return true;
    return false;
}

const FacetComplex::Table& FacetComplex::table(int degree) const {
    require(degree >= 0, "FacetComplex: negative degree");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(degree);
    if (it != tables_.end()) return it->second;
    Table t;
    if (degree == 0) {
        for (int i = 0; i < aug_points_; ++i) t.elems.push_back({});
    } else {
        // weakly increasing tuples with support inside a facet, collected
        // facet by facet and deduplicated by the sorted set
        std::set<std::vector<int>> seen;
        for (const auto& f : facets_) {
            std::vector<std::vector<int>> stack = {{}};
            for (int pos = 0; pos < degree; ++pos) {
                std::vector<std::vector<int>> next;
                for (const auto& partial : stack)
                    for (int v : f)
                        if (partial.empty() || v >= partial.back()) {
                            auto ext = partial;
                            ext.push_back(v);
                            next.push_back(std::move(ext));
                        }
                stack = std::move(next);
            }
            for (auto& tup : stack) seen.insert(std::move(tup));
        }
        t.elems.assign(seen.begin(), seen.end());
    }
    for (size_t i = 0; i < t.elems.size(); ++i) t.index[t.elems[i]] = i;
    // degree 0 with two points: both index to the empty tuple; keep index map
    // pointing at 0 so actions collapse there
    return tables_.emplace(degree, std::move(t)).first->second;
}

size_t FacetComplex::card(int degree) const { return table(degree).elems.size(); }

const std::vector<int>& FacetComplex::tuple(int degree, size_t idx) const {
    const Table& t = table(degree);
    require(idx < t.elems.size(), "FacetComplex: index out of range");
    return t.elems[idx];
}

size_t FacetComplex::index_of_tuple(const std::vector<int>& tup) const {
    const Table& t = table(static_cast<int>(tup.size()));
    auto it = t.index.find(tup);
    require(it != t.index.end(), "FacetComplex: tuple not in complex");
    return it->second;
}

size_t FacetComplex::act(size_t idx, const OSMor& m) const {
    check_variance(m);
    int from = m.tgt(), to = m.src();
    require(idx < card(from), "FacetComplex: index out of range");
    if (to == 0) return from == 0 ? idx : 0; // everything augments to the first point
    const std::vector<int>& t = tuple(from, idx);
    std::vector<int> out(to);
    for (int i = 1; i <= to; ++i) out[i - 1] = t[m.f(i) - 1];
    return index_of_tuple(out);
}

std::string FacetComplex::label(int degree, size_t idx) const {
    if (degree == 0) return aug_points_ == 2 ? (idx == 0 ? "a" : "b") : "*";
    const std::vector<int>& t = tuple(degree, idx);
    std::string out;
    for (size_t i = 0; i < t.size(); ++i) {
        if (i) out += '.';
        out += std::to_string(t[i]);
    }
    return out;
}

// ------------------------------------------------------------- OForget

OForgetPresheaf::OForgetPresheaf(PresheafPtr inner)
    : Presheaf(Variance::O), inner_(std::move(inner)) {
    require(inner_ != nullptr && inner_->variance == Variance::OSigma,
            "OForgetPresheaf: needs a fiber-ordered presheaf");
}

size_t OForgetPresheaf::card(int degree) const { return inner_->card(degree); }

size_t OForgetPresheaf::act(size_t idx, const OSMor& m) const {
    check_variance(m);
    return inner_->act(idx, m);
}

std::string OForgetPresheaf::label(int degree, size_t idx) const {
    return inner_->label(degree, idx);
}

// ------------------------------------------------------------- helpers

PresheafPtr standard_object(Variance v, int n) {
    return std::make_shared<StandardPresheaf>(v, n);
}

PresheafPtr sigma_free(PresheafPtr base) {
    return std::make_shared<SigmaFreePresheaf>(std::move(base));
}

PresheafPtr product(std::vector<PresheafPtr> factors) {
    return std::make_shared<ProductPresheaf>(std::move(factors));
}

PresheafPtr from_facets(int vertices, std::vector<std::vector<int>> facets,
                        int aug_points) {
    return std::make_shared<FacetComplex>(vertices, std::move(facets), aug_points);
}

PresheafPair boundary_pair(Variance v, int n) {
    auto sp = std::make_shared<StandardPresheaf>(v, n);
    return PresheafPair{sp, [sp](int degree, size_t idx) {
                            return !sp->element(degree, idx).is_surjective();
                        }};
}

PresheafPair basepoint_pair(PresheafPtr X) {
    return PresheafPair{std::move(X),
                        [](int degree, size_t) { return degree == 0; }};
}

size_t eta_index(const SigmaFreePresheaf& XS, int degree, size_t base_idx) {
    return XS.encode(degree, base_idx, Perm::identity(degree));
}

size_t u_card(const Presheaf& X, int d) { return X.card(d + 1); }

size_t u_face(const Presheaf& X, int d, int i, size_t idx) {
    require(d >= 1 && i >= 0 && i <= d, "u_face: bad index");
    return X.act(idx, OSMor::natural(OMap::delta(d + 1, i + 1)));
}

size_t u_degeneracy(const Presheaf& X, int d, int i, size_t idx) {
    require(d >= 0 && i >= 0 && i <= d, "u_degeneracy: bad index");
    return X.act(idx, OSMor::natural(OMap::sigma(d + 1, i + 1)));
}

PresheafPtr fixture_interval() { return from_facets(2, {{1, 2}}); }
PresheafPtr fixture_triangle() { return from_facets(3, {{1, 2, 3}}); }
PresheafPtr fixture_circle() { return from_facets(3, {{1, 2}, {2, 3}, {1, 3}}); }
PresheafPtr fixture_tetrahedron() { return from_facets(4, {{1, 2, 3, 4}}); }
PresheafPtr fixture_sphere2() {
    return from_facets(4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}});
}
PresheafPtr fixture_rp2() {
    return from_facets(6, {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 6}, {1, 4, 5},
                           {2, 3, 4}, {2, 3, 5}, {2, 4, 6}, {3, 5, 6}, {4, 5, 6}});
}

} // namespace symjoin
