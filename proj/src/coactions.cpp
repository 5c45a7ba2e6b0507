#include "symjoin/coactions.hpp"

#include <algorithm>

namespace symjoin {

ACoaction::ACoaction(int arity, PresheafPtr X, int window, Ring ring)
    : n_(arity), X_(std::move(X)), window_(window), ring_(ring),
      rel_(relative_chains(basepoint_pair(X_), window, ring)) {
    require(n_ >= 0, "ACoaction: negative arity");
    require(window_ >= 1, "ACoaction: empty window");
    require(X_->variance == Variance::O, "ACoaction: order-variance space expected");
    // away from the basepoint the relative basis is the space itself, index
    // for index; the conjugation to simplicial degrees relies on this
    for (int d = 1; d <= window_; ++d)
        require((size_t)rel_.rank(d) == X_->card(d),
                "ACoaction: relative chains disagree with the space");
    if (n_ == 0) return;
    iso_ = sigma_free_join_iso(std::vector<PresheafPtr>((size_t)n_, X_));
    XS_ = std::dynamic_pointer_cast<const SigmaFreePresheaf>(
        iso_->sigma_join->factor(0));
    require(XS_ != nullptr, "ACoaction: freed factor of unexpected type");
    tensor_.emplace(std::vector<ChainComplex>((size_t)n_, rel_));
}

const TensorComplex& ACoaction::tensor() const {
    require(tensor_.has_value(), "ACoaction::tensor: arity zero has no tensor");
    return *tensor_;
}

Vec ACoaction::apply_key(const OSMor& f, int q, size_t idx) const {
    require(f.tgt() == n_, "ACoaction::apply_key: key arity mismatch");
    require(f.is_surjective(), "ACoaction::apply_key: keys are surjective");
    require(q >= 1 && q <= window_,
            "ACoaction::apply_key: degree outside the window");
    require(idx < X_->card(q), "ACoaction::apply_key: index out of range");
    Vec out;
    if (n_ == 0) {
        // the augmentation: each vertex counts once, higher degrees die
        if (q == 1) vec_add(out, 0, 1, ring_);
        return out;
    }
    const int p = f.src() - 1;
    const int m = p + q;
    require(m - (n_ - 1) <= window_, "ACoaction::apply_key: window overflow");
    // stage 1: unit into the freed presheaf
    const size_t xs = eta_index(*XS_, q, idx);
    // stage 2: shuffle product against the key; the desuspension of the key
    // contributes (-1)^p so that the composite commutes with the
    // differentials on the nose
    const int eps = (p % 2) ? -1 : 1;
    for (const ShuffleTerm& sh : multishuffles({p, q - 1})) {
        const OSMor big = apply_degeneracies(f, sh.parts[1]);
        const size_t z = apply_degeneracies(*XS_, q - 1, sh.parts[0], xs);
        // stage 3: set-level coaction into the symmetric join
        const size_t w = coaction_set_level(*iso_->sigma_join, big, z);
        // stage 4: join normal form
        const size_t fr = iso_->forward(m, w);
        // stage 5: sign quasi-isomorphism on the freed plain join
        const auto [base, pi] = iso_->free_join->decode(m, fr);
        // stage 6: a plain join over the diagonal is a tensor, basis to basis
        const JoinPresheaf::Element e = iso_->plain_join->decode(m, base);
        std::vector<int> degs((size_t)n_);
        for (int i = 0; i < n_; ++i)
            degs[(size_t)i] = (int)e.summand.preimage(i + 1).size();
        vec_add(out, (int)tensor_->encode(degs, e.parts),
                (long long)eps * sh.sign * pi.sign(), ring_);
    }
    return out;
}

Vec ACoaction::apply(const OperadElement& xi, int q, const Vec& x) const {
    Vec out;
    for (auto& [f, c] : xi.terms) {
        require(f.tgt() == n_ && f.src() == xi.degree + 1,
                "ACoaction::apply: element not homogeneous for this layer");
        for (auto& [i, w] : x)
            for (auto& [k, v] : apply_key(f, q, (size_t)i))
                vec_add(out, k, c * w * v, ring_);
    }
    return out;
}

JCoalgebra::JCoalgebra(int arity, PresheafPtr Y, int window, Ring ring)
    : n_(arity), window_(window), ring_(ring),
      a_(arity, std::move(Y), window + 1, ring),
      chains_(simplicial_chains(*a_.space(), window, ring)) {
    if (n_ > 0) tensor_.emplace(std::vector<ChainComplex>((size_t)n_, chains_));
}

const TensorComplex& JCoalgebra::tensor() const {
    require(tensor_.has_value(), "JCoalgebra::tensor: arity zero has no tensor");
    return *tensor_;
}

Vec JCoalgebra::apply_key(const OSMor& f, int q, size_t idx) const {
    require(q >= 0 && q <= window_,
            "JCoalgebra::apply_key: degree outside the window");
    Vec out;
    if (n_ == 0) {
        if (q == 0) vec_add(out, 0, 1, ring_);
        return out;
    }
    const int p = f.src() - 1;
    // conjugate through relative degree = simplicial degree + 1: evaluate on
    // the suspended input, then push one suspension out of every factor.
    // Interchanging the key past the input suspension gives (-1)^p; moving
    // factor i's suspension out past the later ones gives the rest.
    for (auto& [k, c] : a_.apply_key(f, q + 1, idx)) {
        auto [degs, idxs] = a_.tensor().decode(p + q + 1, (size_t)k);
        int s = p;
        for (int i = 0; i < n_; ++i)
            s += (n_ - 1 - i) * (degs[(size_t)i] - 1);
        for (int& d : degs) d -= 1;
        vec_add(out, (int)tensor_->encode(degs, idxs), (s % 2 ? -c : c), ring_);
    }
    return out;
}

Vec JCoalgebra::apply(const OperadElement& xi, int q, const Vec& y) const {
    Vec out;
    for (auto& [f, c] : xi.terms) {
        require(f.tgt() == n_ && f.src() == xi.degree + n_,
                "JCoalgebra::apply: element not homogeneous for this layer");
        for (auto& [i, w] : y)
            for (auto& [k, v] : apply_key(f, q, (size_t)i))
                vec_add(out, k, c * w * v, ring_);
    }
    return out;
}

OSMor cup_generator(int i) {
    require(i >= 0, "cup_generator: negative index");
    std::vector<int> img;
    for (int k = 0; k <= i + 1; ++k) img.push_back(k % 2 ? 2 : 1);
    return canonical_decompose(SetMap(std::move(img), 2));
}

int aw_calibration_sign(int r, int s) {
    require(r >= 0 && s >= 0, "aw_calibration_sign: negative bidegree");
    return 1;
}

Vec cup_i(const JCoalgebra& M, int i, int q, const Vec& y) {
    require(M.arity() == 2, "cup_i: binary machine expected");
    Vec out;
    if (y.empty()) return out;
    const OSMor key = cup_generator(i);
    for (auto& [c, w] : y)
        for (auto& [k, v] : M.apply_key(key, q, (size_t)c))
            vec_add(out, k, w * v, M.ring());
    return out;
}

// ---------------------------------------------------------------- cochains

long long evaluate(const Cochain& a, const Vec& c, Ring ring) {
    long long s = 0;
    for (auto& [i, w] : c) {
        auto it = a.v.find(i);
        if (it != a.v.end()) s += w * it->second;
    }
    return ring.reduce(s);
}

Cochain coboundary(const ChainComplex& C, const Cochain& a) {
    Cochain out{a.degree + 1, {}};
    if (a.degree + 1 > C.hi() || a.degree + 1 < C.lo()) return out;
    const SparseMat d = C.diff(a.degree + 1);
    for (int j = 0; j < d.cols; ++j) {
        long long s = 0;
        for (auto& [r, w] : d.col[(size_t)j]) {
            auto it = a.v.find(r);
            if (it != a.v.end()) s += w * it->second;
        }
        if (s) vec_add(out.v, j, s, C.ring());
    }
    return out;
}

Cochain dual_product(const JCoalgebra& M, const OperadElement& key,
                     const std::vector<Cochain>& as) {
    require((int)as.size() == key.arity, "dual_product: one cochain per slot");
    int t = -key.degree;
    std::vector<int> adeg;
    for (auto& a : as) {
        t += a.degree;
        adeg.push_back(a.degree);
    }
    Cochain out{t, {}};
    if (t < 0 || t > M.window()) return out;
    for (size_t c = 0; c < (size_t)M.chains().rank(t); ++c) {
        long long s = 0;
        for (auto& [k, w] : M.apply(key, t, Vec{{(int)c, 1}})) {
            auto [degs, idxs] = M.tensor().decode(t + key.degree, (size_t)k);
            long long f = w;
            for (size_t i = 0; i < as.size(); ++i) {
                if (degs[i] != adeg[i]) {
                    f = 0;
                    break;
                }
                auto it = as[i].v.find((int)idxs[i]);
                if (it == as[i].v.end()) {
                    f = 0;
                    break;
                }
                f *= it->second;
            }
            if (f) s += f * tensor_eval_sign(adeg, degs);
        }
        if (s) vec_add(out.v, (int)c, s, M.ring());
    }
    return out;
}

// ---------------------------------------------------- mod-2 cohomology

namespace {

std::vector<char> densify(const Vec& v, size_t n) {
    std::vector<char> out(n, 0);
    for (auto& [i, c] : v)
        if (c % 2 != 0) out[(size_t)i] = 1;
    return out;
}

// incremental mod-2 elimination; stored rows are reduced against all
// earlier pivots, so one ordered pass decides membership
struct F2Span {
    std::vector<std::vector<char>> vecs;
    std::vector<std::vector<char>> tags; // optional tracking alongside
    std::vector<size_t> pivots;

    // reduce v (and its tag) in place; true if a nonzero residue remains
    bool reduce(std::vector<char>& v, std::vector<char>* tag) const {
        for (size_t i = 0; i < vecs.size(); ++i)
            if (v[pivots[i]]) {
                for (size_t j = 0; j < v.size(); ++j) v[j] ^= vecs[i][j];
                if (tag)
                    for (size_t j = 0; j < tag->size(); ++j)
                        (*tag)[j] ^= tags[i][j];
            }
        return std::find(v.begin(), v.end(), 1) != v.end();
    }

    bool insert(std::vector<char> v, std::vector<char> tag = {}) {
        if (!reduce(v, tag.empty() ? nullptr : &tag)) return false;
        pivots.push_back(
            (size_t)(std::find(v.begin(), v.end(), 1) - v.begin()));
        vecs.push_back(std::move(v));
        tags.push_back(std::move(tag));
        return true;
    }
};

// columns of the transpose differential out of degree t: rows of the
// incoming boundary matrix, one vector per basis dual
std::vector<std::vector<char>> delta_columns(const ChainComplex& C, int t) {
    const size_t n = (size_t)C.rank(t);
    const size_t m = (size_t)C.rank(t + 1);
    std::vector<std::vector<char>> cols(n, std::vector<char>(m, 0));
    if (t + 1 <= C.hi()) {
        const SparseMat d = C.diff(t + 1);
        for (int j = 0; j < d.cols; ++j)
            for (auto& [r, w] : d.col[(size_t)j])
                if (w % 2 != 0) cols[(size_t)r][(size_t)j] = 1;
    }
    return cols;
}

} // namespace

bool is_cocycle_f2(const JCoalgebra& M, const Cochain& a) {
    require(M.ring().p == 2, "is_cocycle_f2: mod-2 machine expected");
    require(a.degree + 1 <= M.window(),
            "is_cocycle_f2: degree too close to the window");
    return coboundary(M.chains(), a).v.empty();
}

std::vector<Cochain> cohomology_basis_f2(const JCoalgebra& M, int t) {
    require(M.ring().p == 2, "cohomology_basis_f2: mod-2 machine expected");
    require(t >= 0 && t + 1 <= M.window(),
            "cohomology_basis_f2: degree too close to the window");
    const ChainComplex& C = M.chains();
    const size_t n = (size_t)C.rank(t);
    // kernel of the outgoing transpose differential, tracked through the
    // elimination of its columns
    const auto cols = delta_columns(C, t);
    F2Span span;
    std::vector<std::vector<char>> kernel;
    for (size_t j = 0; j < n; ++j) {
        std::vector<char> v = cols[j];
        std::vector<char> tag(n, 0);
        tag[j] = 1;
        if (!span.reduce(v, &tag)) {
            kernel.push_back(std::move(tag));
        } else {
            span.pivots.push_back(
                (size_t)(std::find(v.begin(), v.end(), 1) - v.begin()));
            span.vecs.push_back(std::move(v));
            span.tags.push_back(std::move(tag));
        }
    }
    // quotient by the image of the previous transpose differential
    F2Span reps;
    if (t >= 1)
        for (const auto& u : delta_columns(C, t - 1)) reps.insert(u);
    std::vector<Cochain> basis;
    for (auto& k : kernel) {
        std::vector<char> v = k;
        if (!reps.reduce(v, nullptr)) continue;
        Cochain rep{t, {}};
        for (size_t i = 0; i < v.size(); ++i)
            if (v[i]) rep.v[(int)i] = 1;
        basis.push_back(std::move(rep));
        reps.insert(std::move(v));
    }
    return basis;
}

std::vector<int> class_coordinates_f2(const JCoalgebra& M, const Cochain& a) {
    require(is_cocycle_f2(M, a), "class_coordinates_f2: not a cocycle");
    const ChainComplex& C = M.chains();
    const size_t n = (size_t)C.rank(a.degree);
    const auto basis = cohomology_basis_f2(M, a.degree);
    F2Span span;
    if (a.degree >= 1)
        for (const auto& u : delta_columns(C, a.degree - 1))
            span.insert(u, std::vector<char>(basis.size(), 0));
    for (size_t i = 0; i < basis.size(); ++i) {
        std::vector<char> tag(basis.size(), 0);
        tag[i] = 1;
        span.insert(densify(basis[i].v, n), std::move(tag));
    }
    std::vector<char> v = densify(a.v, n);
    std::vector<char> tag(basis.size(), 0);
    const bool leftover = span.reduce(v, &tag);
    require(!leftover, "class_coordinates_f2: cocycle outside the span");
    return std::vector<int>(tag.begin(), tag.end());
}

std::vector<int> steenrod_square(const JCoalgebra& M, int i, const Cochain& x) {
    require(M.ring().p == 2, "steenrod_square: mod-2 machine expected");
    require(i >= 0, "steenrod_square: negative square");
    require(is_cocycle_f2(M, x), "steenrod_square: representative must be a cocycle");
    const int d = x.degree;
    if (i > d)
        return std::vector<int>(cohomology_basis_f2(M, d + i).size(), 0);
    const Cochain sq = dual_product(M, j_from(cup_generator(d - i)), {x, x});
    return class_coordinates_f2(M, sq);
}

} // namespace symjoin
