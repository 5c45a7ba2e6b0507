#include "symjoin/operads.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <random>
#include <sstream>

namespace symjoin {

namespace {

int parity_sign(long long e) { return ((e % 2) + 2) % 2 == 0 ? 1 : -1; }

void prune(OperadElement& e) {
    for (auto it = e.terms.begin(); it != e.terms.end();)
        it = it->second == 0 ? e.terms.erase(it) : std::next(it);
}

// every term must be a surjective morphism with the source size dictated by
// the grading at hand
void check_terms(const OperadElement& e, int src, const char* who) {
    for (const auto& [f, c] : e.terms) {
        require(f.tgt() == e.arity, std::string(who) + ": term arity mismatch");
        require(f.src() == src, std::string(who) + ": term source mismatch");
        require(f.is_surjective(), std::string(who) + ": non-surjective term");
    }
}

int a_source(const OperadElement& e) { return e.degree + 1; }
int j_source(const OperadElement& e) { return e.degree + e.arity; }

// compositions re-enumerate the same shuffle families constantly
const std::vector<ShuffleTerm>& cached_multishuffles(const std::vector<int>& sizes) {
    static std::map<std::vector<int>, std::vector<ShuffleTerm>> memo;
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    auto it = memo.find(sizes);
    if (it == memo.end()) it = memo.emplace(sizes, multishuffles(sizes)).first;
    return it->second;
}

OperadElement diff_faces(const OperadElement& e, int src, int global) {
    OperadElement out{e.arity, e.degree - 1, {}};
    for (const auto& [x, c] : e.terms)
        for (int i = 1; i <= src; ++i) {
            const OSMor y = face(x, i);
            if (!y.is_surjective()) continue;
            out.terms[y] += (i % 2 ? -global : global) * c;
        }
    prune(out);
    return out;
}

OperadElement act_keys(const OperadElement& e, const Perm& pi, int coeff_sign) {
    require(pi.n() == e.arity, "operad action: permutation arity mismatch");
    OperadElement out{e.arity, e.degree, {}};
    const OSMor left = OSMor::from_perm(pi.inverse());
    for (const auto& [f, c] : e.terms) out.terms[compose(left, f)] += coeff_sign * c;
    prune(out);
    return out;
}

} // namespace

OperadElement operator+(OperadElement a, const OperadElement& b) {
    require(a.arity == b.arity && a.degree == b.degree,
            "operad sum: mismatched arity or degree");
    for (const auto& [f, c] : b.terms) a.terms[f] += c;
    prune(a);
    return a;
}

OperadElement operator-(OperadElement a, const OperadElement& b) {
    return std::move(a) + (-1) * b;
}

OperadElement operator*(long long c, OperadElement a) {
    for (auto& [f, v] : a.terms) v *= c;
    prune(a);
    return a;
}

std::string to_string(const OperadElement& e) {
    if (e.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [f, c] : e.terms) {
        if (first) {
            if (c < 0) os << "-";
            first = false;
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        const long long a = c < 0 ? -c : c;
        if (a != 1) os << a << "*";
        os << to_string(f);
    }
    return os.str();
}

std::vector<OSMor> surjective_basis(int src, int arity) {
    if (src < 0 || arity < 0) return {};
    std::vector<OSMor> out = all_surjective_osmors(src, arity);
    std::sort(out.begin(), out.end());
    return out;
}

OperadElement naturalize(const OperadElement& e) {
    OperadElement out{e.arity, e.degree, {}};
    for (const auto& [f, c] : e.terms)
        out.terms[canonical_decompose(f.underlying())] += c;
    prune(out);
    return out;
}

// ------------------------------------------------------------------ layer a

OperadElement a_from(const OSMor& f, long long coeff) {
    require(f.is_surjective(), "a_from: morphism must be surjective");
    OperadElement e{f.tgt(), f.src() - 1, {}};
    if (coeff != 0) e.terms[f] = coeff;
    return e;
}

std::vector<OSMor> a_basis(int arity, int degree) {
    return surjective_basis(degree + 1, arity);
}

OperadElement a_zero(int arity, int degree) { return {arity, degree, {}}; }

OperadElement a_unit() { return a_from(OSMor::identity(1)); }

OperadElement a_diff(const OperadElement& e) {
    check_terms(e, a_source(e), "a_diff");
    return diff_faces(e, a_source(e), -1);
}

OperadElement a_act(const OperadElement& e, const Perm& pi) {
    check_terms(e, a_source(e), "a_act");
    return act_keys(e, pi, 1);
}

OperadElement a_compose(const OperadElement& outer,
                        const std::vector<OperadElement>& inners) {
    const int n = outer.arity;
    require((int)inners.size() == n,
            "a_compose: inner slot count must equal the outer arity");
    check_terms(outer, a_source(outer), "a_compose outer");
    if (n == 0) return outer;

    int total_arity = 0;
    int total_degree = outer.degree;
    bool zero = outer.is_zero();
    std::vector<int> sizes{outer.degree};
    for (const auto& b : inners) {
        require(b.arity >= 1, "a_compose: zero-arity inner slots are not supported");
        check_terms(b, a_source(b), "a_compose inner");
        total_arity += b.arity;
        total_degree += b.degree;
        sizes.push_back(b.degree);
        zero = zero || b.is_zero();
    }
    OperadElement out{total_arity, total_degree, {}};
    if (zero) return out;

    // degenerated copies of each factor, cached by the factor's own block
    // (the degeneracy indices are the block's complement)
    using Column = std::vector<std::pair<OSMor, long long>>;
    std::vector<std::map<std::vector<int>, Column>> cache(sizes.size());
    const int positions = total_degree; // shuffled degeneracy slots 0..total-1
    for (const auto& sh : cached_multishuffles(sizes)) {
        std::vector<const Column*> cols(sizes.size());
        for (size_t i = 0; i < sizes.size(); ++i) {
            auto it = cache[i].find(sh.parts[i]);
            if (it == cache[i].end()) {
                std::vector<int> comp;
                size_t k = 0;
                for (int pos = 0; pos < positions; ++pos) {
                    if (k < sh.parts[i].size() && sh.parts[i][k] == pos) {
                        ++k;
                        continue;
                    }
                    comp.push_back(pos);
                }
                const OperadElement& src = i == 0 ? outer : inners[i - 1];
                Column column;
                for (const auto& [f, c] : src.terms)
                    column.emplace_back(apply_degeneracies(f, comp), c);
                it = cache[i].emplace(sh.parts[i], std::move(column)).first;
            }
            cols[i] = &it->second;
        }
        std::vector<size_t> pick(cols.size(), 0);
        std::vector<OSMor> gs(inners.size());
        while (true) {
            long long coeff = sh.sign * (*cols[0])[pick[0]].second;
            for (size_t i = 1; i < cols.size(); ++i) {
                gs[i - 1] = (*cols[i])[pick[i]].first;
                coeff *= (*cols[i])[pick[i]].second;
            }
            const OSMor h = psi((*cols[0])[pick[0]].first, gs);
            if (h.is_surjective()) out.terms[h] += coeff;
            size_t pos = cols.size();
            while (pos > 0) {
                if (++pick[pos - 1] < (*cols[pos - 1]).size()) break;
                pick[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
    }
    prune(out);
    return out;
}

// ------------------------------------------------------------------ layer j

OperadElement j_from(const OSMor& f, long long coeff) {
    require(f.is_surjective(), "j_from: morphism must be surjective");
    OperadElement e{f.tgt(), f.src() - f.tgt(), {}};
    if (coeff != 0) e.terms[f] = coeff;
    return e;
}

std::vector<OSMor> j_basis(int arity, int degree) {
    return surjective_basis(degree + arity, arity);
}

OperadElement j_zero(int arity, int degree) { return {arity, degree, {}}; }

OperadElement j_unit() { return j_from(OSMor::identity(1)); }

OperadElement j_diff(const OperadElement& e) {
    check_terms(e, j_source(e), "j_diff");
    return diff_faces(e, j_source(e), parity_sign(e.arity));
}

OperadElement j_act(const OperadElement& e, const Perm& pi) {
    check_terms(e, j_source(e), "j_act");
    return act_keys(e, pi, pi.sign());
}

OperadElement j_compose(const OperadElement& outer,
                        const std::vector<OperadElement>& inners) {
    const int n = outer.arity;
    require((int)inners.size() == n,
            "j_compose: inner slot count must equal the outer arity");
    check_terms(outer, j_source(outer), "j_compose outer");
    if (n == 0) return outer;

    const OperadElement a_outer{n, j_source(outer) - 1, outer.terms};
    std::vector<int> ks, qs;
    std::vector<OperadElement> a_inners;
    for (const auto& b : inners) {
        require(b.arity >= 1, "j_compose: zero-arity inner slots are not supported");
        check_terms(b, j_source(b), "j_compose inner");
        ks.push_back(b.arity);
        qs.push_back(j_source(b) - 1);
        a_inners.push_back({b.arity, j_source(b) - 1, b.terms});
    }
    const long long tw = lambda_twist_sign(n, ks, a_outer.degree, qs);
    const OperadElement a_out = a_compose(a_outer, a_inners);
    OperadElement out{a_out.arity, a_out.degree + 1 - a_out.arity, {}};
    for (const auto& [f, c] : a_out.terms) out.terms[f] = tw * c;
    return out;
}

long long augmentation(const OperadElement& e) {
    require(e.degree == 0, "augmentation: defined on degree 0 only");
    check_terms(e, j_source(e), "augmentation");
    long long v = 0;
    for (const auto& [f, c] : e.terms) v += c * f.pi.sign();
    return v;
}

// ------------------------------------------------------- sign bookkeeping

int tensor_eval_sign(const std::vector<int>& map_degrees,
                     const std::vector<int>& arg_degrees) {
    require(map_degrees.size() == arg_degrees.size(),
            "tensor_eval_sign: length mismatch");
    long long e = 0, prefix = 0;
    for (size_t j = 0; j < map_degrees.size(); ++j) {
        e += (long long)map_degrees[j] * prefix;
        prefix += arg_degrees[j];
    }
    return parity_sign(e);
}

int lambda_twist_sign(int outer_arity, const std::vector<int>& inner_arities,
                      int outer_a_degree,
                      const std::vector<int>& inner_a_degrees) {
    require((int)inner_arities.size() == outer_arity &&
                inner_arities.size() == inner_a_degrees.size(),
            "lambda_twist_sign: length mismatch");
    // suspension bookkeeping for the shape (n; k_1..k_n): transported through
    // the coalgebra correspondence, the shifted composition picks up
    //   p(n+K) + sum_i (n+i+K+k_i+K_{<i}) q_i + sum_i K_{<i} + sum_{i<j} k_i k_j
    // with p, q_i the unshifted degrees and K_{<i} the partial arity sums.
    // The degree part is forced by the chain-map identity against the
    // shifted differential; the constant part is pinned by the sign
    // augmentation being multiplicative in degree 0.
    const long long n = outer_arity;
    long long K = 0;
    for (int k : inner_arities) K += k;
    long long e = (long long)outer_a_degree * (n + K);
    long long before = 0, pairs = 0;
    for (size_t t = 0; t < inner_arities.size(); ++t) {
        const long long k = inner_arities[t];
        const long long i = (long long)t + 1;
        e += (n + i + K + k + before) * inner_a_degrees[t];
        e += before;
        pairs += before * k;
        before += k;
    }
    return parity_sign(e + pairs);
}

int koszul_reorder_sign(const std::vector<int>& degrees,
                        const std::vector<int>& order) {
    require(degrees.size() == order.size(), "koszul_reorder_sign: length mismatch");
    std::vector<int> pos(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        require(order[i] >= 0 && (size_t)order[i] < order.size(),
                "koszul_reorder_sign: order out of range");
        pos[(size_t)order[i]] = (int)i;
    }
    long long e = 0;
    for (size_t a = 0; a < degrees.size(); ++a)
        for (size_t b = a + 1; b < degrees.size(); ++b)
            if (pos[a] > pos[b]) e += (long long)degrees[a] * degrees[b];
    return parity_sign(e);
}

// ------------------------------------------------------- permutation layer

Perm perm_operad_compose(const Perm& sigma, const std::vector<Perm>& taus) {
    const int n = sigma.n();
    require((int)taus.size() == n, "perm_operad_compose: arity mismatch");
    std::vector<int> off((size_t)n + 1, 0);
    for (int i = 0; i < n; ++i) off[(size_t)i + 1] = off[(size_t)i] + taus[(size_t)i].n();
    const Perm si = sigma.inverse();
    std::vector<int> offp((size_t)n + 1, 0);
    for (int s = 1; s <= n; ++s)
        offp[(size_t)s] = offp[(size_t)s - 1] + taus[(size_t)si(s) - 1].n();
    std::vector<int> img((size_t)off[(size_t)n], 0);
    for (int i = 1; i <= n; ++i)
        for (int t = 1; t <= taus[(size_t)i - 1].n(); ++t)
            img[(size_t)(off[(size_t)i - 1] + t - 1)] =
                offp[(size_t)sigma(i) - 1] + taus[(size_t)i - 1](t);
    return Perm(img);
}

int degree0_sign(int arity, const std::vector<int>& inner_arities) {
    std::vector<OperadElement> inners;
    for (int k : inner_arities) inners.push_back(j_from(OSMor::identity(k)));
    const OperadElement r = j_compose(j_from(OSMor::identity(arity)), inners);
    require(r.terms.size() == 1, "degree0_sign: composite is not a single term");
    const auto& [f, c] = *r.terms.begin();
    require(f == OSMor::identity(f.tgt()),
            "degree0_sign: identities do not compose to the identity");
    require(c == 1 || c == -1, "degree0_sign: coefficient is not a unit");
    return (int)c;
}

// --------------------------------------------------------------- complexes

ChainComplex j_complex(int arity, int window) {
    require(arity >= 0 && window >= 0, "j_complex: bad arguments");
    std::vector<std::vector<OSMor>> bases;
    std::vector<std::vector<std::string>> labels;
    for (int d = 0; d <= window; ++d) {
        bases.push_back(j_basis(arity, d));
        std::vector<std::string> names;
        for (const OSMor& f : bases.back()) names.push_back(to_string(f));
        labels.push_back(std::move(names));
    }
    std::vector<SparseMat> diffs;
    diffs.emplace_back(0, (int)bases[0].size());
    for (int d = 1; d <= window; ++d) {
        std::map<OSMor, int> row;
        for (size_t i = 0; i < bases[(size_t)d - 1].size(); ++i)
            row[bases[(size_t)d - 1][i]] = (int)i;
        SparseMat m((int)bases[(size_t)d - 1].size(), (int)bases[(size_t)d].size());
        for (size_t c = 0; c < bases[(size_t)d].size(); ++c)
            for (const auto& [f, v] : j_diff(j_from(bases[(size_t)d][c])).terms)
                m.add(row.at(f), (int)c, v);
        diffs.push_back(std::move(m));
    }
    return ChainComplex::from_parts(Ring{0}, 0, std::move(labels), std::move(diffs));
}

// ----------------------------------------------------------------- reports

bool AxiomReport::ok() const {
    if (lines.empty()) return false;
    for (const auto& l : lines)
        if (l.failures != 0 || l.instances == 0) return false;
    return true;
}

namespace {

struct Level {
    std::string tag;
    std::function<OperadElement(const OSMor&)> from;
    // bases indexed by the shifted degree (source minus arity), the common
    // nonnegative measure for both gradings
    std::function<std::vector<OSMor>(int, int)> basis;
    std::function<OperadElement(const OperadElement&)> diff;
    std::function<OperadElement(const OperadElement&, const Perm&)> act;
    std::function<OperadElement(const OperadElement&,
                                const std::vector<OperadElement>&)>
        comp;
    std::function<OperadElement()> unit;
};

std::vector<Level> levels() {
    Level a{"a",
            [](const OSMor& f) { return a_from(f); },
            [](int n, int d) { return a_basis(n, d + n - 1); },
            a_diff,
            a_act,
            a_compose,
            a_unit};
    Level j{"j",
            [](const OSMor& f) { return j_from(f); },
            [](int n, int d) { return j_basis(n, d); },
            j_diff,
            j_act,
            j_compose,
            j_unit};
    return {a, j};
}

void record(IdentityReport& line, bool ok, const std::function<std::string()>& cex) {
    ++line.instances;
    if (ok) return;
    ++line.failures;
    if (line.counterexamples.size() < 4) line.counterexamples.push_back(cex());
}

// all vectors of the given length with entries 1..maxv
std::vector<std::vector<int>> arity_tuples(int len, int maxv) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur((size_t)len, 1);
    while (true) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[(size_t)i] == maxv) --i;
        if (i < 0) break;
        ++cur[(size_t)i];
        for (int t = i + 1; t < len; ++t) cur[(size_t)t] = 1;
    }
    return out;
}

// all degree vectors with the given slot count and bounded sum
std::vector<std::vector<int>> degree_splits(int slots, int total) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur((size_t)slots, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == slots) {
            out.push_back(cur);
            return;
        }
        for (int d = 0; d <= left; ++d) {
            cur[(size_t)pos] = d;
            rec(pos + 1, left - d);
        }
    };
    rec(0, total);
    return out;
}

// run fn over basis tuples: exhaustively when the grid holds at most cap
// tuples, otherwise over cap seeded draws so heavy shapes stay affordable
void for_each_tuple(const std::vector<std::vector<OSMor>>& bases, size_t cap,
                    uint64_t seed,
                    const std::function<void(const std::vector<const OSMor*>&)>& fn) {
    size_t total = 1;
    for (const auto& b : bases) {
        if (b.empty()) return;
        total = total > (size_t)1 << 40 ? total : total * b.size();
    }
    std::vector<const OSMor*> cur(bases.size());
    if (total <= cap) {
        std::vector<size_t> pick(bases.size(), 0);
        while (true) {
            for (size_t i = 0; i < bases.size(); ++i) cur[i] = &bases[i][pick[i]];
            fn(cur);
            size_t pos = bases.size();
            while (pos > 0) {
                if (++pick[pos - 1] < bases[pos - 1].size()) break;
                pick[pos - 1] = 0;
                --pos;
            }
            if (pos == 0) break;
        }
        return;
    }
    std::mt19937_64 rng(seed);
    for (size_t t = 0; t < cap; ++t) {
        for (size_t i = 0; i < bases.size(); ++i)
            cur[i] = &bases[i][rng() % bases[i].size()];
        fn(cur);
    }
}

std::string tuple_str(const OperadElement& x, const std::vector<OperadElement>& ys) {
    std::string s = "outer " + to_string(x) + "; inner";
    for (const auto& y : ys) s += " [" + to_string(y) + "]";
    return s;
}

} // namespace

AxiomReport verify_operad_axioms(int max_arity, int max_total_degree) {
    require(max_arity >= 1 && max_total_degree >= 0,
            "verify_operad_axioms: bad bounds");
    const int A = max_arity;
    const int D = max_total_degree;
    const int Dassoc = std::min(D, 1); // associativity grows too fast above
    // caps for the tuple grids; draws beyond them are seeded and reproducible
    const size_t kTupleCap = 4000;
    const size_t kAssocCap = 120;
    uint64_t salt = 0xC0FFEE;
    AxiomReport rep{A, D, {}};

    const auto line = [](std::string name) {
        IdentityReport r;
        r.identity = std::move(name);
        return r;
    };

    for (const Level& L : levels()) {
        IdentityReport dd = line(L.tag + ": differential squares to zero");
        IdentityReport ac = line(L.tag + ": the symmetric action is a chain map");
        IdentityReport uo = line(L.tag + ": outer unit is strict");
        IdentityReport ui =
            line(L.tag + ": inner units naturalize, strictly on natural orders");
        IdentityReport cm = line(L.tag + ": composition is a chain map");
        IdentityReport eo =
            line(L.tag + ": outer equivariance with the block permutation");
        IdentityReport ei = line(L.tag + ": inner equivariance is strict");
        IdentityReport as =
            line(L.tag + ": composition associates with the regrouping sign (total degree <= " +
                 std::to_string(Dassoc) + ")");

        // unary identities over single basis elements
        for (int n = 1; n <= A; ++n) {
            const auto perms = all_perms(n);
            for (int d = 0; d <= D + 1; ++d)
                for (const OSMor& f : L.basis(n, d)) {
                    const OperadElement e = L.from(f);
                    record(dd, L.diff(L.diff(e)).is_zero(),
                           [&] { return "d(d(" + to_string(e) + ")) != 0"; });
                    const OperadElement de = L.diff(e);
                    for (const Perm& pi : perms)
                        record(ac, L.diff(L.act(e, pi)) == L.act(de, pi), [&] {
                            return "d does not commute with the action on " +
                                   to_string(e);
                        });
                    record(uo, L.comp(L.unit(), {e}) == e, [&] {
                        return "outer unit fails on " + to_string(e);
                    });
                    const std::vector<OperadElement> units((size_t)n, L.unit());
                    const OperadElement nu = L.comp(e, units);
                    const bool strict = !f.has_natural_orders() || nu == e;
                    record(ui, nu == naturalize(e) && strict, [&] {
                        return "inner units fail on " + to_string(e);
                    });
                }
        }

        // identities over composition tuples
        for (int n = 1; n <= A; ++n) {
            const auto perms_n = all_perms(n);
            for (const auto& ks : arity_tuples(n, A)) {
                std::vector<std::vector<Perm>> inner_perms;
                for (int k : ks) inner_perms.push_back(all_perms(k));
                std::vector<Perm> block_ids;
                for (int k : ks) block_ids.push_back(Perm::identity(k));

                for (const auto& degs : degree_splits(n + 1, D)) {
                    std::vector<std::vector<OSMor>> bases{L.basis(n, degs[0])};
                    for (int i = 0; i < n; ++i)
                        bases.push_back(L.basis(ks[(size_t)i], degs[(size_t)i + 1]));
                    for_each_tuple(bases, kTupleCap, ++salt,
                                   [&](const std::vector<const OSMor*>& t) {
                        const OperadElement x = L.from(*t[0]);
                        std::vector<OperadElement> ys;
                        for (int i = 0; i < n; ++i) ys.push_back(L.from(*t[(size_t)i + 1]));
                        const OperadElement xy = L.comp(x, ys);

                        // chain map: d gamma = gamma(dx; ys) + Koszul terms
                        OperadElement rhs = L.comp(L.diff(x), ys);
                        long long pre = x.degree;
                        for (int i = 0; i < n; ++i) {
                            std::vector<OperadElement> mod = ys;
                            mod[(size_t)i] = L.diff(ys[(size_t)i]);
                            rhs = std::move(rhs) +
                                  parity_sign(pre) * L.comp(x, mod);
                            pre += ys[(size_t)i].degree;
                        }
                        record(cm, L.diff(xy) == rhs,
                               [&] { return "chain map fails: " + tuple_str(x, ys); });

                        // outer equivariance
                        std::vector<int> degs_y;
                        for (const auto& y : ys) degs_y.push_back(y.degree);
                        for (const Perm& s : perms_n) {
                            std::vector<OperadElement> moved;
                            std::vector<int> order;
                            for (int i = 1; i <= n; ++i) {
                                moved.push_back(ys[(size_t)s(i) - 1]);
                                order.push_back(s(i) - 1);
                            }
                            // the moved tuple assembles into blocks shuffled
                            // by s^{-1}, matching the right-action convention
                            const Perm beta =
                                perm_operad_compose(s.inverse(), block_ids);
                            const OperadElement lhs = L.comp(L.act(x, s), moved);
                            const OperadElement rhs2 =
                                koszul_reorder_sign(degs_y, order) *
                                L.act(xy, beta.inverse());
                            record(eo, lhs == rhs2, [&] {
                                return "outer equivariance fails for " +
                                       to_string(s) + " on " + tuple_str(x, ys);
                            });
                        }

                        // inner equivariance: tuples of fiber permutations
                        std::vector<size_t> pick(ks.size(), 0);
                        while (true) {
                            std::vector<Perm> taus;
                            std::vector<OperadElement> twisted;
                            for (size_t i = 0; i < ks.size(); ++i) {
                                taus.push_back(inner_perms[i][pick[i]]);
                                twisted.push_back(L.act(ys[i], taus.back()));
                            }
                            record(ei,
                                   L.comp(x, twisted) ==
                                       L.act(xy, perm_operad_compose(
                                                     Perm::identity(n), taus)),
                                   [&] {
                                       return "inner equivariance fails on " +
                                              tuple_str(x, ys);
                                   });
                            size_t pos = ks.size();
                            while (pos > 0) {
                                if (++pick[pos - 1] < inner_perms[pos - 1].size())
                                    break;
                                pick[pos - 1] = 0;
                                --pos;
                            }
                            if (pos == 0) break;
                        }
                    });
                }

                // associativity, with its own degree cap
                int K = 0;
                for (int k : ks) K += k;
                for (const auto& ls : arity_tuples(K, A)) {
                    for (const auto& degs : degree_splits(1 + n + K, Dassoc)) {
                        std::vector<std::vector<OSMor>> bases{L.basis(n, degs[0])};
                        for (int i = 0; i < n; ++i)
                            bases.push_back(
                                L.basis(ks[(size_t)i], degs[(size_t)i + 1]));
                        for (int j = 0; j < K; ++j)
                            bases.push_back(
                                L.basis(ls[(size_t)j], degs[(size_t)(1 + n + j)]));
                        for_each_tuple(bases, kAssocCap, ++salt,
                                       [&](const std::vector<const OSMor*>& t) {
                            const OperadElement a = L.from(*t[0]);
                            std::vector<OperadElement> bs, cs;
                            for (int i = 0; i < n; ++i)
                                bs.push_back(L.from(*t[(size_t)i + 1]));
                            for (int j = 0; j < K; ++j)
                                cs.push_back(L.from(*t[(size_t)(1 + n + j)]));

                            const OperadElement lhs = L.comp(L.comp(a, bs), cs);

                            // b_j moves past the inner blocks of the earlier slots
                            long long e = 0;
                            std::vector<OperadElement> inner;
                            int at = 0;
                            std::vector<long long> blockdeg((size_t)n, 0);
                            for (int i = 0; i < n; ++i) {
                                std::vector<OperadElement> block(
                                    cs.begin() + at, cs.begin() + at + ks[(size_t)i]);
                                for (const auto& c : block)
                                    blockdeg[(size_t)i] += c.degree;
                                at += ks[(size_t)i];
                                inner.push_back(L.comp(bs[(size_t)i], block));
                            }
                            for (int i = 0; i < n; ++i)
                                for (int j = i + 1; j < n; ++j)
                                    e += blockdeg[(size_t)i] * bs[(size_t)j].degree;
                            const OperadElement rhs =
                                parity_sign(e) * L.comp(a, inner);
                            record(as, lhs == rhs, [&] {
                                return "associativity fails: " + tuple_str(a, bs) +
                                       " then " + std::to_string(cs.size()) +
                                       " innermost slots";
                            });
                        });
                    }
                }
            }
        }

        rep.lines.push_back(std::move(dd));
        rep.lines.push_back(std::move(ac));
        rep.lines.push_back(std::move(uo));
        rep.lines.push_back(std::move(ui));
        rep.lines.push_back(std::move(cm));
        rep.lines.push_back(std::move(eo));
        rep.lines.push_back(std::move(ei));
        rep.lines.push_back(std::move(as));
    }

    // degree 0 against the permutation operad, sign recorded per shape
    {
        IdentityReport p0 =
            line("j: degree 0 is the sign-twisted permutation operad");
        const int bound = std::min(A, 3);
        for (int n = 1; n <= bound; ++n)
            for (const auto& ks : arity_tuples(n, bound)) {
                std::vector<std::vector<Perm>> groups;
                for (int k : ks) groups.push_back(all_perms(k));
                for (const Perm& sigma : all_perms(n)) {
                    // keys pair with permutations through u |-> u^{-1}; under
                    // that pairing the composite is the permutation-operad
                    // composite of the paired data, and the coefficient never
                    // sees the inner permutations
                    std::vector<Perm> moved_ids;
                    std::vector<int> ks_moved;
                    for (int j = 1; j <= n; ++j) {
                        ks_moved.push_back(ks[(size_t)sigma(j) - 1]);
                        moved_ids.push_back(Perm::identity(ks_moved.back()));
                    }
                    const Perm beta = perm_operad_compose(sigma, moved_ids);
                    const int sgn = degree0_sign(n, ks_moved) * sigma.sign() *
                                    beta.sign();
                    const OperadElement outer =
                        j_from(OSMor::from_perm(sigma));
                    std::vector<size_t> pick(groups.size(), 0);
                    while (true) {
                        std::vector<Perm> taus_inv;
                        std::vector<OperadElement> inner;
                        for (size_t i = 0; i < groups.size(); ++i) {
                            const Perm& tau = groups[i][pick[i]];
                            taus_inv.push_back(tau.inverse());
                            inner.push_back(j_from(OSMor::from_perm(tau)));
                        }
                        const Perm dict =
                            perm_operad_compose(sigma.inverse(), taus_inv);
                        record(p0,
                               j_compose(outer, inner) ==
                                   j_from(OSMor::from_perm(dict.inverse()),
                                          sgn),
                               [&] {
                                   return "permutation comparison fails at " +
                                          to_string(sigma);
                               });
                        size_t pos = groups.size();
                        while (pos > 0) {
                            if (++pick[pos - 1] < groups[pos - 1].size()) break;
                            pick[pos - 1] = 0;
                            --pos;
                        }
                        if (pos == 0) break;
                    }
                }
            }
        rep.lines.push_back(std::move(p0));
    }

    return rep;
}

bool EinfinityReport::ok() const {
    if (homology.empty()) return false;
    if (!(homology[0] == HomologyZ{1, {}})) return false;
    for (size_t d = 1; d < homology.size(); ++d)
        if (!(homology[d] == HomologyZ{0, {}})) return false;
    return sigma_free && augmentation_ok && splitting_ok;
}

EinfinityReport certify_einfinity(int arity, int window) {
    require(arity >= 1 && window >= 1, "certify_einfinity: bad arguments");
    EinfinityReport rep;
    rep.arity = arity;
    rep.window = window;

    const ChainComplex c = j_complex(arity, window);
    for (int d = 0; d <= window; ++d) rep.basis_sizes.push_back((size_t)c.rank(d));
    for (int d = 0; d < window; ++d) rep.homology.push_back(homology_z(c, d));

    rep.sigma_free = true;
    const auto perms = all_perms(arity);
    for (int d = 0; d <= window && rep.sigma_free; ++d)
        for (const OSMor& f : j_basis(arity, d)) {
            for (const Perm& pi : perms) {
                if (pi == Perm::identity(arity)) continue;
                if (compose(OSMor::from_perm(pi.inverse()), f) == f) {
                    rep.sigma_free = false;
                    break;
                }
            }
            if (!rep.sigma_free) break;
        }

    rep.augmentation_ok = augmentation(j_from(OSMor::identity(arity))) == 1;
    for (const OSMor& f : j_basis(arity, 1))
        if (augmentation(j_diff(j_from(f))) != 0) rep.augmentation_ok = false;

    const auto b0 = j_basis(arity, 0);
    const auto b1 = j_basis(arity, 1);
    std::map<OSMor, int> row;
    for (size_t i = 0; i < b0.size(); ++i) row[b0[i]] = (int)i;
    SparseMat image((int)b0.size(), (int)b1.size());
    for (size_t col = 0; col < b1.size(); ++col)
        for (const auto& [f, v] : j_diff(j_from(b1[col])).terms)
            image.add(row.at(f), (int)col, v);
    SparseMat span((int)b0.size(), (int)b0.size() - 1);
    int col = 0;
    for (const OSMor& f : b0) {
        if (f == OSMor::identity(arity)) continue;
        span.add(row.at(OSMor::identity(arity)), col, 1);
        span.add(row.at(f), col, -(long long)f.pi.sign());
        ++col;
    }
    rep.splitting_ok = same_column_span_z(image, span);

    return rep;
}

} // namespace symjoin
