#include "symjoin/chains.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace symjoin {

void vec_add(Vec& v, int idx, long long c, const Ring& ring) {
    long long nv = ring.reduce(v[idx] + c);
    if (nv == 0)
        v.erase(idx);
    else
        v[idx] = nv;
}

Vec vec_scale(const Vec& v, long long c, const Ring& ring) {
    Vec out;
    for (auto& [i, x] : v) {
        long long nv = ring.reduce(x * c);
        if (nv) out[i] = nv;
    }
    return out;
}

void SparseMat::add(int r, int c, long long v, const Ring& ring) {
    require(r >= 0 && r < rows && c >= 0 && c < cols, "SparseMat::add: out of range");
    vec_add(col[c], r, v, ring);
}

void SparseMat::set_column(int c, const Vec& v, const Ring& ring) {
    require(c >= 0 && c < cols, "SparseMat::set_column: out of range");
    col[c].clear();
    for (auto& [r, x] : v) {
        require(r >= 0 && r < rows, "SparseMat::set_column: row out of range");
        long long nv = ring.reduce(x);
        if (nv) col[c][r] = nv;
    }
}

long long SparseMat::at(int r, int c) const {
    require(r >= 0 && r < rows && c >= 0 && c < cols, "SparseMat::at: out of range");
    auto it = col[c].find(r);
    return it == col[c].end() ? 0 : it->second;
}

bool SparseMat::is_zero() const {
    for (auto& c : col)
        if (!c.empty()) return false;
    return true;
}

size_t SparseMat::nonzeros() const {
    size_t n = 0;
    for (auto& c : col) n += c.size();
    return n;
}

SparseMat SparseMat::identity(int n) {
    SparseMat m(n, n);
    for (int i = 0; i < n; ++i) m.col[i][i] = 1;
    return m;
}

SparseMat matmul(const SparseMat& a, const SparseMat& b, const Ring& ring) {
    require(a.cols == b.rows, "matmul: dimension mismatch");
    SparseMat out(a.rows, b.cols);
    for (int j = 0; j < b.cols; ++j) {
        Vec acc;
        for (auto& [k, bv] : b.col[j])
            for (auto& [r, av] : a.col[k]) vec_add(acc, r, av * bv, ring);
        out.col[j] = std::move(acc);
    }
    return out;
}

SparseMat matlincomb(const SparseMat& a, long long ca, const SparseMat& b,
                     long long cb, const Ring& ring) {
    require(a.rows == b.rows && a.cols == b.cols, "matlincomb: dimension mismatch");
    SparseMat out(a.rows, a.cols);
    for (int j = 0; j < a.cols; ++j) {
        Vec acc;
        for (auto& [r, v] : a.col[j]) vec_add(acc, r, ca * v, ring);
        for (auto& [r, v] : b.col[j]) vec_add(acc, r, cb * v, ring);
        out.col[j] = std::move(acc);
    }
    return out;
}

Vec matapply(const SparseMat& a, const Vec& v, const Ring& ring) {
    Vec out;
    for (auto& [j, c] : v) {
        require(j >= 0 && j < a.cols, "matapply: index out of range");
        for (auto& [r, av] : a.col[j]) vec_add(out, r, av * c, ring);
    }
    return out;
}

// ------------------------------------------------------------ ChainComplex

ChainComplex ChainComplex::from_parts(Ring ring, int lo,
                                      std::vector<std::vector<std::string>> labels,
                                      std::vector<SparseMat> diffs, int shift) {
    require(!labels.empty() && labels.size() == diffs.size(),
            "ChainComplex: labels and differentials must align");
    for (size_t i = 0; i < labels.size(); ++i) {
        std::set<std::string> seen(labels[i].begin(), labels[i].end());
        require(seen.size() == labels[i].size(),
                "ChainComplex: duplicate basis label in degree " +
                    std::to_string(lo + (int)i));
        require(diffs[i].cols == (int)labels[i].size(),
                "ChainComplex: differential has wrong source rank");
        int expect_rows = i == 0 ? 0 : (int)labels[i - 1].size();
        require(diffs[i].rows == expect_rows,
                "ChainComplex: differential has wrong target rank");
        // normalize entries into the ring
        for (auto& c : diffs[i].col) {
            Vec clean;
            for (auto& [r, v] : c) vec_add(clean, r, v, ring);
            c = std::move(clean);
        }
    }
    for (size_t i = 1; i < diffs.size(); ++i)
        require(matmul(diffs[i - 1], diffs[i], ring).is_zero(),
                "ChainComplex: d o d != 0 at degree " + std::to_string(lo + (int)i));
    ChainComplex C;
    auto body = std::make_shared<Body>();
    body->ring = ring;
    body->lo = lo;
    body->labels = std::move(labels);
    body->diffs = std::move(diffs);
    C.body_ = std::move(body);
    C.shift_ = shift;
    return C;
}

Ring ChainComplex::ring() const {
    require(body_ != nullptr, "ChainComplex: empty");
    return body_->ring;
}

int ChainComplex::lo() const {
    require(body_ != nullptr, "ChainComplex: empty");
    return body_->lo + offset_;
}

int ChainComplex::hi() const { return lo() + (int)body_->labels.size() - 1; }

int ChainComplex::rank(int d) const {
    if (!body_ || !in_window(d)) return 0;
    return (int)body_->labels[d - lo()].size();
}

const std::vector<std::string>& ChainComplex::labels(int d) const {
    require(body_ && in_window(d), "ChainComplex::labels: degree out of window");
    return body_->labels[d - lo()];
}

const std::string& ChainComplex::label(int d, size_t i) const {
    const auto& L = labels(d);
    require(i < L.size(), "ChainComplex::label: index out of range");
    return L[i];
}

SparseMat ChainComplex::diff(int d) const {
    if (!body_ || !in_window(d)) return SparseMat(rank(d - 1), rank(d));
    SparseMat m = body_->diffs[d - lo()];
    if (dsign_ == -1) {
        for (auto& c : m.col) {
            Vec neg;
            for (auto& [r, v] : c) vec_add(neg, r, -v, body_->ring);
            c = std::move(neg);
        }
    }
    return m;
}

ChainComplex ChainComplex::suspend(int n) const {
    require(body_ != nullptr, "ChainComplex: empty");
    ChainComplex C = *this;
    C.offset_ += n;
    if (n % 2 != 0) C.dsign_ = -C.dsign_;
    C.shift_ += n;
    return C;
}

// --------------------------------------------------------------- ChainMap

ChainMap::ChainMap(ChainComplex src, ChainComplex tgt, int degree,
                   std::vector<SparseMat> mats)
    : src_(std::move(src)), tgt_(std::move(tgt)), degree_(degree),
      mats_(std::move(mats)) {
    require(src_.ring() == tgt_.ring(), "ChainMap: ring mismatch");
    const Ring ring = src_.ring();
    require((int)mats_.size() == src_.hi() - src_.lo() + 1,
            "ChainMap: one matrix per source degree required");
    const long long fsign = (degree_ % 2 == 0) ? 1 : -1;
    for (int d = src_.lo(); d <= src_.hi(); ++d) {
        const SparseMat& f = mats_[d - src_.lo()];
        require(f.cols == src_.rank(d) && f.rows == tgt_.rank(d + degree_),
                "ChainMap: matrix dimensions wrong at degree " + std::to_string(d));
        SparseMat lhs = matmul(tgt_.diff(d + degree_), f, ring);
        SparseMat rhs(tgt_.rank(d + degree_ - 1), src_.rank(d));
        if (d > src_.lo())
            rhs = matmul(mats_[d - src_.lo() - 1], src_.diff(d), ring);
        require(lhs == matlincomb(rhs, fsign, SparseMat(rhs.rows, rhs.cols), 0, ring),
                "ChainMap: square fails at degree " + std::to_string(d));
    }
}

const SparseMat& ChainMap::mat(int src_degree) const {
    require(src_.in_window(src_degree), "ChainMap::mat: degree out of window");
    return mats_[src_degree - src_.lo()];
}

Vec ChainMap::apply(int src_degree, const Vec& v) const {
    return matapply(mat(src_degree), v, src_.ring());
}

ChainMap compose(const ChainMap& a, const ChainMap& b) {
    require(b.tgt().lo() == a.src().lo() && b.tgt().hi() == a.src().hi(),
            "compose: middle complexes must share a window");
    const Ring ring = b.src().ring();
    std::vector<SparseMat> mats;
    for (int d = b.src().lo(); d <= b.src().hi(); ++d) {
        int mid = d + b.degree();
        if (a.src().in_window(mid)) {
            mats.push_back(matmul(a.mat(mid), b.mat(d), ring));
        } else {
            mats.push_back(SparseMat(a.tgt().rank(mid + a.degree()), b.src().rank(d)));
        }
    }
    return ChainMap(b.src(), a.tgt(), a.degree() + b.degree(), std::move(mats));
}

ChainMap make_chain_map(const ChainComplex& src, const ChainComplex& tgt,
                        int degree_shift,
                        const std::function<Vec(int, size_t)>& entry_fn) {
    const Ring ring = src.ring();
    std::vector<SparseMat> mats;
    for (int d = src.lo(); d <= src.hi(); ++d) {
        SparseMat m(tgt.rank(d + degree_shift), src.rank(d));
        for (size_t i = 0; i < (size_t)src.rank(d); ++i)
            m.set_column((int)i, entry_fn(d, i), ring);
        mats.push_back(std::move(m));
    }
    return ChainMap(src, tgt, degree_shift, std::move(mats));
}

// ---------------------------------------------------------------- builders

ChainComplex chains_of(const Presheaf& X, int window, Ring ring) {
    require(window >= 0, "chains_of: window must be nonnegative");
    std::vector<std::vector<std::string>> labels(window + 1);
    std::vector<SparseMat> diffs(window + 1);
    for (int d = 0; d <= window; ++d) {
        size_t n = X.card(d);
        for (size_t i = 0; i < n; ++i) labels[d].push_back(X.label(d, i));
        SparseMat m(d == 0 ? 0 : (int)X.card(d - 1), (int)n);
        for (size_t i = 0; i < n && d > 0; ++i)
            for (int j = 1; j <= d; ++j)
                m.add((int)X.act(i, OMap::delta(d, j)), (int)i, j % 2 ? -1 : 1, ring);
        diffs[d] = std::move(m);
    }
    return ChainComplex::from_parts(ring, 0, std::move(labels), std::move(diffs));
}

ChainComplex relative_chains(const PresheafPair& P, int window, Ring ring) {
    require(window >= 0, "relative_chains: window must be nonnegative");
    const Presheaf& X = *P.total;
    // keep[d]: surviving total indices in order; rel[d]: total index -> rel index
    std::vector<std::vector<size_t>> keep(window + 1);
    std::vector<std::map<size_t, size_t>> rel(window + 1);
    for (int d = 0; d <= window; ++d)
        for (size_t i = 0; i < X.card(d); ++i)
            if (!P.in_sub(d, i)) {
                rel[d][i] = keep[d].size();
                keep[d].push_back(i);
            }
    std::vector<std::vector<std::string>> labels(window + 1);
    std::vector<SparseMat> diffs(window + 1);
    for (int d = 0; d <= window; ++d) {
        for (size_t i : keep[d]) labels[d].push_back(X.label(d, i));
        SparseMat m(d == 0 ? 0 : (int)keep[d - 1].size(), (int)keep[d].size());
        for (size_t c = 0; c < keep[d].size() && d > 0; ++c)
            for (int j = 1; j <= d; ++j) {
                size_t face = X.act(keep[d][c], OMap::delta(d, j));
                auto it = rel[d - 1].find(face);
                if (it != rel[d - 1].end())
                    m.add((int)it->second, (int)c, j % 2 ? -1 : 1, ring);
            }
        diffs[d] = std::move(m);
    }
    return ChainComplex::from_parts(ring, 0, std::move(labels), std::move(diffs));
}

ChainComplex simplicial_chains(const Presheaf& X, int window, Ring ring) {
    require(window >= 0, "simplicial_chains: window must be nonnegative");
    std::vector<std::vector<std::string>> labels(window + 1);
    std::vector<SparseMat> diffs(window + 1);
    for (int d = 0; d <= window; ++d) {
        size_t n = u_card(X, d);
        for (size_t i = 0; i < n; ++i) labels[d].push_back(X.label(d + 1, i));
        SparseMat m(d == 0 ? 0 : (int)u_card(X, d - 1), (int)n);
        for (size_t i = 0; i < n && d > 0; ++i)
            for (int j = 0; j <= d; ++j)
                m.add((int)u_face(X, d, j, i), (int)i, j % 2 ? -1 : 1, ring);
        diffs[d] = std::move(m);
    }
    return ChainComplex::from_parts(ring, 0, std::move(labels), std::move(diffs));
}

ChainMap reduced_iso(PresheafPtr X, int window, Ring ring) {
    require(window >= 1, "reduced_iso: window must be at least 1");
    ChainComplex relC = relative_chains(basepoint_pair(X), window, ring);
    ChainComplex ssc = simplicial_chains(*X, window - 1, ring).suspend(1);
    std::vector<SparseMat> mats;
    for (int d = 0; d <= window; ++d)
        mats.push_back(SparseMat::identity(relC.rank(d)));
    return ChainMap(relC, ssc, 0, std::move(mats));
}

// ------------------------------------------------------------ TensorComplex

TensorComplex::TensorComplex(std::vector<ChainComplex> factors)
    : factors_(std::move(factors)) {
    require(!factors_.empty(), "TensorComplex: needs at least one factor");
    const Ring ring = factors_[0].ring();
    for (auto& f : factors_) require(f.ring() == ring, "TensorComplex: ring mismatch");
    lo_ = 0;
    hi_ = 0;
    for (auto& f : factors_) {
        lo_ += f.lo();
        hi_ += f.hi();
    }
    // enumerate degree tuples per total degree, lex ascending
    for (int D = lo_; D <= hi_; ++D) {
        std::vector<Block> bl;
        std::vector<int> degs(factors_.size());
        std::function<void(size_t, int)> rec = [&](size_t i, int rem) {
            if (i + 1 == factors_.size()) {
                if (rem < factors_[i].lo() || rem > factors_[i].hi()) return;
                degs[i] = rem;
                size_t sz = 1;
                for (size_t k = 0; k < factors_.size(); ++k)
                    sz *= (size_t)factors_[k].rank(degs[k]);
                size_t off = bl.empty() ? 0 : bl.back().offset + bl.back().size;
                bl.push_back(Block{degs, off, sz});
                return;
            }
            for (int d = factors_[i].lo(); d <= factors_[i].hi() && d <= rem; ++d) {
                degs[i] = d;
                rec(i + 1, rem - d);
            }
        };
        rec(0, D);
        blocks_[D] = std::move(bl);
    }
}

const ChainComplex& TensorComplex::complex() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (complex_) return *complex_;
    const Ring ring = factors_[0].ring();
    // assemble labels and the Koszul-signed differential
    std::vector<std::vector<std::string>> labels(hi_ - lo_ + 1);
    std::vector<SparseMat> diffs(hi_ - lo_ + 1);
    for (int D = lo_; D <= hi_; ++D) {
        size_t total = 0;
        for (auto& b : blocks_[D]) total += b.size;
        for (auto& b : blocks_[D]) {
            std::vector<size_t> idxs(factors_.size(), 0);
            for (size_t k = 0; k < b.size; ++k) {
                std::ostringstream os;
                os << "(";
                for (size_t i = 0; i < factors_.size(); ++i)
                    os << (i ? ", " : "") << factors_[i].label(b.degs[i], idxs[i]);
                os << ")";
                labels[D - lo_].push_back(os.str());
                for (size_t i = factors_.size(); i-- > 0;) {
                    if (++idxs[i] < (size_t)factors_[i].rank(b.degs[i])) break;
                    idxs[i] = 0;
                }
            }
        }
        SparseMat m(D == lo_ ? 0 : (int)labels[D - lo_ - 1].size(), (int)total);
        if (D > lo_) {
            for (auto& b : blocks_[D]) {
                std::vector<size_t> idxs(factors_.size(), 0);
                for (size_t k = 0; k < b.size; ++k) {
                    int koszul = 1;
                    for (size_t i = 0; i < factors_.size(); ++i) {
                        SparseMat df = factors_[i].diff(b.degs[i]);
                        if (!df.is_zero()) {
                            auto tdegs = b.degs;
                            tdegs[i] -= 1;
                            auto tidxs = idxs;
                            for (auto& [r, v] : df.col[(int)idxs[i]]) {
                                tidxs[i] = (size_t)r;
                                m.add((int)encode(tdegs, tidxs), (int)(b.offset + k),
                                      koszul * v, ring);
                            }
                        }
                        if (b.degs[i] % 2 != 0) koszul = -koszul;
                    }
                    for (size_t i = factors_.size(); i-- > 0;) {
                        if (++idxs[i] < (size_t)factors_[i].rank(b.degs[i])) break;
                        idxs[i] = 0;
                    }
                }
            }
        }
        diffs[D - lo_] = std::move(m);
    }
    complex_ = std::make_shared<const ChainComplex>(
        ChainComplex::from_parts(ring, lo_, std::move(labels), std::move(diffs)));
    return *complex_;
}

const std::vector<TensorComplex::Block>& TensorComplex::blocks(int D) const {
    static const std::vector<Block> empty;
    auto it = blocks_.find(D);
    return it == blocks_.end() ? empty : it->second;
}

size_t TensorComplex::encode(const std::vector<int>& degs,
                             const std::vector<size_t>& idxs) const {
    require(degs.size() == factors_.size() && idxs.size() == factors_.size(),
            "TensorComplex::encode: arity mismatch");
    int D = 0;
    for (int d : degs) D += d;
    for (auto& b : blocks(D)) {
        if (b.degs != degs) continue;
        size_t pos = 0;
        for (size_t i = 0; i < factors_.size(); ++i) {
            size_t r = (size_t)factors_[i].rank(degs[i]);
            require(idxs[i] < r, "TensorComplex::encode: index out of range");
            pos = pos * r + idxs[i];
        }
        return b.offset + pos;
    }
    fail("TensorComplex::encode: degree tuple out of window");
}

std::pair<std::vector<int>, std::vector<size_t>>
TensorComplex::decode(int D, size_t idx) const {
    for (auto& b : blocks(D)) {
        if (idx < b.offset || idx >= b.offset + b.size) continue;
        size_t pos = idx - b.offset;
        std::vector<size_t> idxs(factors_.size());
        for (size_t i = factors_.size(); i-- > 0;) {
            size_t r = (size_t)factors_[i].rank(b.degs[i]);
            idxs[i] = pos % r;
            pos /= r;
        }
        return {b.degs, idxs};
    }
    fail("TensorComplex::decode: index out of range");
}

Vec TensorComplex::diff_apply(int D, const Vec& v) const {
    Vec out;
    const Ring rg = ring();
    for (auto& [idx, c] : v) {
        auto [degs, idxs] = decode(D, (size_t)idx);
        int koszul = 1;
        for (size_t i = 0; i < factors_.size(); ++i) {
            const SparseMat df = factors_[i].diff(degs[i]);
            if (!df.is_zero()) {
                auto tdegs = degs;
                tdegs[i] -= 1;
                auto tidxs = idxs;
                for (auto& [r, w] : df.col[idxs[i]]) {
                    tidxs[i] = (size_t)r;
                    vec_add(out, (int)encode(tdegs, tidxs), koszul * w * c, rg);
                }
            }
            if (degs[i] % 2 != 0) koszul = -koszul;
        }
    }
    return out;
}

ChainMap tensor_symmetry(const TensorComplex& CD, const TensorComplex& DC) {
    require(CD.arity() == 2 && DC.arity() == 2,
            "tensor_symmetry: binary tensors only");
    return make_chain_map(
        CD.complex(), DC.complex(), 0, [&](int D, size_t i) {
            auto [degs, idxs] = CD.decode(D, i);
            long long sgn = (degs[0] * degs[1]) % 2 ? -1 : 1;
            Vec v;
            v[(int)DC.encode({degs[1], degs[0]}, {idxs[1], idxs[0]})] = sgn;
            return v;
        });
}

ChainMap suspension_interchange(const TensorComplex& susp,
                                const TensorComplex& plain,
                                const std::vector<int>& offsets) {
    require(susp.arity() == plain.arity() && offsets.size() == susp.arity(),
            "suspension_interchange: arity mismatch");
    int total = 0;
    for (int n : offsets) total += n;
    ChainComplex tgt = plain.complex().suspend(total);
    return make_chain_map(susp.complex(), tgt, 0, [&](int D, size_t i) {
        auto [degs, idxs] = susp.decode(D, i);
        std::vector<int> pdegs(degs.size());
        long long e = 0;
        for (size_t a = 0; a < degs.size(); ++a) {
            pdegs[a] = degs[a] - offsets[a];
            for (size_t b = 0; b < a; ++b) e += (long long)offsets[a] * pdegs[b];
        }
        Vec v;
        v[(int)plain.encode(pdegs, idxs)] = e % 2 ? -1 : 1;
        return v;
    });
}

// -------------------------------------------------------------- EZ shuffle

std::vector<ShuffleTerm> multishuffles(const std::vector<int>& sizes) {
    int total = 0;
    for (int s : sizes) {
        require(s >= 0, "multishuffles: negative part size");
        total += s;
    }
    std::vector<ShuffleTerm> out;
    std::vector<std::vector<int>> parts(sizes.size());
    std::function<void(int)> rec = [&](int pos) {
        if (pos == total) {
            int inv = 0;
            for (size_t i = 0; i < parts.size(); ++i)
                for (size_t j = i + 1; j < parts.size(); ++j)
                    for (int a : parts[i])
                        for (int b : parts[j])
                            if (a > b) ++inv;
            out.push_back(ShuffleTerm{parts, inv % 2 ? -1 : 1});
            return;
        }
        for (size_t i = 0; i < parts.size(); ++i) {
            if ((int)parts[i].size() == sizes[i]) continue;
            parts[i].push_back(pos);
            rec(pos + 1);
            parts[i].pop_back();
        }
    };
    rec(0);
    return out;
}

size_t apply_degeneracies(const Presheaf& X, int d, const std::vector<int>& asc,
                          size_t idx) {
    int cur = d;
    for (size_t k = 0; k < asc.size(); ++k) {
        if (k) require(asc[k] > asc[k - 1], "apply_degeneracies: indices must ascend");
        idx = u_degeneracy(X, cur, asc[k], idx);
        ++cur;
    }
    return idx;
}

OSMor apply_degeneracies(const OSMor& x, const std::vector<int>& asc) {
    OSMor cur = x;
    for (size_t k = 0; k < asc.size(); ++k) {
        if (k) require(asc[k] > asc[k - 1], "apply_degeneracies: indices must ascend");
        cur = compose(cur, OSMor::natural(OMap::sigma(cur.src(), asc[k] + 1)));
    }
    return cur;
}

EZShuffle ez_shuffle(PresheafPtr X, PresheafPtr Y, int window, Ring ring) {
    EZShuffle ez;
    ez.prod = std::make_shared<const ProductPresheaf>(std::vector<PresheafPtr>{X, Y});
    ez.source = std::make_shared<const TensorComplex>(std::vector<ChainComplex>{
        simplicial_chains(*X, window, ring), simplicial_chains(*Y, window, ring)});
    // the tensor square reaches degree 2 * window
    ez.target = simplicial_chains(*ez.prod, 2 * window, ring);
    ez.map = std::make_shared<const ChainMap>(make_chain_map(
        ez.source->complex(), ez.target, 0, [&](int D, size_t i) {
            auto [degs, idxs] = ez.source->decode(D, i);
            const int p = degs[0], q = degs[1];
            Vec out;
            for (const auto& sh : multishuffles({p, q})) {
                // parts[0] degenerates the second factor, parts[1] the first
                size_t sx = apply_degeneracies(*X, p, sh.parts[1], idxs[0]);
                size_t sy = apply_degeneracies(*Y, q, sh.parts[0], idxs[1]);
                vec_add(out, (int)ez.prod->encode(D + 1, {sx, sy}), sh.sign, ring);
            }
            return out;
        }));
    return ez;
}

// ---------------------------------------------------------------- sign map

ChainMap sign_map(const SigmaFreePresheaf& XS, const Presheaf& X, int window,
                  Ring ring) {
    ChainComplex src = chains_of(XS, window, ring);
    ChainComplex tgt = chains_of(X, window, ring);
    return make_chain_map(src, tgt, 0, [&](int d, size_t i) {
        auto [base, pi] = XS.decode(d, i);
        Vec v;
        v[(int)base] = pi.sign();
        return v;
    });
}

ChainMap eta_chain_map(const Presheaf& X, const SigmaFreePresheaf& XS,
                       int window, Ring ring) {
    ChainComplex src = chains_of(X, window, ring);
    ChainComplex tgt = chains_of(XS, window, ring);
    return make_chain_map(src, tgt, 0, [&](int d, size_t i) {
        Vec v;
        v[(int)eta_index(XS, d, i)] = 1;
        return v;
    });
}

} // namespace symjoin
