#include "symjoin/morphisms.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <sstream>

namespace symjoin {

// ---------------------------------------------------------------- Perm

Perm::Perm(std::vector<int> v) : img(std::move(v)) {
    std::vector<bool> seen(img.size(), false);
    for (int x : img) {
        require(x >= 1 && x <= n() && !seen[x - 1], "Perm: not a permutation");
        seen[x - 1] = true;
    }
}

Perm Perm::identity(int n) {
    Perm p;
    p.img.resize(n);
    std::iota(p.img.begin(), p.img.end(), 1);
    return p;
}

Perm Perm::inverse() const {
    Perm q;
    q.img.resize(img.size());
    for (int i = 1; i <= n(); ++i) q.img[img[i - 1] - 1] = i;
    return q;
}

int Perm::sign() const {
    int inv = 0;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (img[i] > img[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

Perm Perm::erase_at(int i) const {
    require(i >= 1 && i <= n(), "Perm::erase_at: index out of range");
    Perm q;
    int v = img[i - 1];
    q.img.reserve(img.size() - 1);
    for (int j = 1; j <= n(); ++j) {
        if (j == i) continue;
        int w = img[j - 1];
        q.img.push_back(w > v ? w - 1 : w);
    }
    return q;
}

Perm compose(const Perm& a, const Perm& b) {
    require(a.n() == b.n(), "Perm compose: size mismatch");
    Perm c;
    c.img.resize(a.n());
    for (int i = 1; i <= a.n(); ++i) c.img[i - 1] = a(b(i));
    return c;
}

// ---------------------------------------------------------------- OMap

OMap::OMap(std::vector<int> v, int target) : img(std::move(v)), tgt(target) {
    require(tgt >= 0, "OMap: negative target");
    int prev = 1;
    for (int x : img) {
        require(x >= prev && x <= tgt, "OMap: not order-preserving into target");
        prev = x;
    }
    require(tgt > 0 || img.empty(), "OMap: no maps into 0 from a nonempty source");
}

bool OMap::is_surjective() const {
    int next = 1;
    for (int x : img)
        if (x == next) ++next;
    return next == tgt + 1;
}

bool OMap::is_injective() const {
    for (size_t i = 1; i < img.size(); ++i)
        if (img[i] == img[i - 1]) return false;
    return true;
}

OMap OMap::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return OMap(std::move(v), n);
}

OMap OMap::delta(int n, int i) {
    require(n >= 1 && i >= 1 && i <= n, "delta: bad index");
    std::vector<int> v;
    v.reserve(n - 1);
    for (int x = 1; x <= n; ++x)
        if (x != i) v.push_back(x);
    return OMap(std::move(v), n);
}

OMap OMap::sigma(int n, int i) {
    require(n >= 1 && i >= 1 && i <= n, "sigma: bad index");
    std::vector<int> v;
    v.reserve(n + 1);
    for (int x = 1; x <= n; ++x) {
        v.push_back(x);
        if (x == i) v.push_back(x);
    }
    return OMap(std::move(v), n);
}

OMap compose(const OMap& a, const OMap& b) {
    require(a.src() == b.tgt, "OMap compose: source/target mismatch");
    std::vector<int> v(b.src());
    for (int i = 1; i <= b.src(); ++i) v[i - 1] = a(b(i));
    return OMap(std::move(v), a.tgt);
}

// ---------------------------------------------------------------- SetMap

SetMap::SetMap(std::vector<int> v, int target) : img(std::move(v)), tgt(target) {
    require(tgt >= 0, "SetMap: negative target");
    for (int x : img) require(x >= 1 && x <= tgt, "SetMap: value out of range");
}

bool SetMap::is_surjective() const {
    std::vector<bool> hit(tgt, false);
    for (int x : img) hit[x - 1] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::vector<int> SetMap::preimage(int value) const {
    std::vector<int> out;
    for (int i = 1; i <= src(); ++i)
        if (img[i - 1] == value) out.push_back(i);
    return out;
}

std::vector<int> SetMap::preimage_of(const std::vector<int>& values) const {
    std::vector<bool> want(tgt + 1, false);
    for (int v : values) {
        require(v >= 1 && v <= tgt, "preimage_of: value out of range");
        want[v] = true;
    }
    std::vector<int> out;
    for (int i = 1; i <= src(); ++i)
        if (want[img[i - 1]]) out.push_back(i);
    return out;
}

SetMap SetMap::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return SetMap(std::move(v), n);
}

SetMap compose(const SetMap& a, const SetMap& b) {
    require(a.src() == b.tgt, "SetMap compose: source/target mismatch");
    std::vector<int> v(b.src());
    for (int i = 1; i <= b.src(); ++i) v[i - 1] = a(b(i));
    return SetMap(std::move(v), a.tgt);
}

SetMap as_setmap(const OMap& f) { return SetMap(f.img, f.tgt); }
SetMap as_setmap(const Perm& p) { return SetMap(p.img, p.n()); }

// ---------------------------------------------------------------- OSMor

OSMor::OSMor(OMap f_, Perm pi_) : f(std::move(f_)), pi(std::move(pi_)) {
    require(f.src() == pi.n(), "OSMor: permutation size must match source");
}

SetMap OSMor::underlying() const {
    std::vector<int> v(src());
    for (int i = 1; i <= src(); ++i) v[i - 1] = f(pi(i));
    return SetMap(std::move(v), tgt());
}

OSMor OSMor::identity(int n) { return OSMor(OMap::identity(n), Perm::identity(n)); }

OSMor OSMor::natural(const OMap& f) { return OSMor(f, Perm::identity(f.src())); }

OSMor OSMor::from_perm(const Perm& p) { return OSMor(OMap::identity(p.n()), p); }

bool OSMor::has_natural_orders() const {
    return canonical_decompose(underlying()) == *this;
}

std::vector<std::vector<int>> OSMor::ordered_fibers() const {
    // position of block t in f is [off_t+1, off_t+a_t]; pi maps the fiber of
    // the underlying map over t onto that block, in fiber order
    std::vector<std::vector<int>> out(tgt());
    SetMap u = underlying();
    for (int t = 1; t <= tgt(); ++t) {
        std::vector<int> fib = u.preimage(t);
        std::sort(fib.begin(), fib.end(),
                  [&](int x, int y) { return pi(x) < pi(y); });
        out[t - 1] = std::move(fib);
    }
    return out;
}

OSMor from_fibers(const SetMap& u, const std::vector<std::vector<int>>& fibers) {
    require(static_cast<int>(fibers.size()) == u.tgt, "from_fibers: fiber count");
    std::vector<int> sorted = u.img;
    std::sort(sorted.begin(), sorted.end());
    OMap f(std::move(sorted), u.tgt);
    std::vector<int> p(u.src(), 0);
    int block = 0;
    for (int t = 1; t <= u.tgt; ++t) {
        require(static_cast<int>(fibers[t - 1].size()) ==
                    static_cast<int>(u.preimage(t).size()),
                "from_fibers: fiber size mismatch");
        for (int x : fibers[t - 1]) {
            require(x >= 1 && x <= u.src() && u(x) == t && p[x - 1] == 0,
                    "from_fibers: not an ordering of the fiber");
            p[x - 1] = ++block;
        }
    }
    return OSMor(std::move(f), Perm(std::move(p)));
}

OSMor canonical_decompose(const SetMap& u) {
    std::vector<std::vector<int>> fibers(u.tgt);
    for (int i = 1; i <= u.src(); ++i) fibers[u(i) - 1].push_back(i);
    return from_fibers(u, fibers);
}

StarPair star_decompose(const Perm& pi, const OMap& g) {
    require(pi.n() == g.tgt, "star_decompose: size mismatch");
    // every fiber of pi o g is a fiber of g, so the canonical decomposition
    // of pi o g is exactly the star pair
    OSMor c = canonical_decompose(compose(as_setmap(pi), as_setmap(g)));
    return StarPair{c.pi, c.f};
}

OSMor compose(const OSMor& a, const OSMor& b) {
    require(a.src() == b.tgt(), "OSMor compose: source/target mismatch");
    StarPair sp = star_decompose(a.pi, b.f);
    return OSMor(compose(a.f, sp.pi_star_g), compose(sp.g_star_pi, b.pi));
}

OMap include_subset(const std::vector<int>& I, int m) {
    int prev = 0;
    for (int v : I) {
        require(v > prev && v <= m, "include_subset: not a sorted subset of 1..m");
        prev = v;
    }
    return OMap(I, m);
}

Restriction restrict(const OSMor& x, const std::vector<int>& I) {
    std::vector<int> B = x.underlying().preimage_of(I);
    OSMor f_I = compose(x, OSMor::natural(include_subset(B, x.src())));
    // renumber target values by their rank in I; order-preserving, so the
    // normal form is untouched apart from the omap images
    std::vector<int> rank(x.tgt() + 1, 0);
    for (size_t r = 0; r < I.size(); ++r) rank[I[r]] = static_cast<int>(r) + 1;
    std::vector<int> v = f_I.f.img;
    for (int& w : v) {
        assert(rank[w] != 0);
        w = rank[w];
    }
    OSMor f_to_I(OMap(std::move(v), static_cast<int>(I.size())), f_I.pi);
    return Restriction{std::move(f_I), std::move(f_to_I)};
}

OMap restrict_omap(const OMap& f, const std::vector<int>& I) {
    std::vector<int> rank(f.tgt + 1, 0);
    for (size_t r = 0; r < I.size(); ++r) rank[I[r]] = static_cast<int>(r) + 1;
    std::vector<int> v;
    for (int x : f.img)
        if (rank[x] != 0) v.push_back(rank[x]);
    return OMap(std::move(v), static_cast<int>(I.size()));
}

SetMap restrict_setmap(const SetMap& f, const std::vector<int>& I) {
    std::vector<int> rank(f.tgt + 1, 0);
    for (size_t r = 0; r < I.size(); ++r) rank[I[r]] = static_cast<int>(r) + 1;
    std::vector<int> v;
    for (int x : f.img)
        if (rank[x] != 0) v.push_back(rank[x]);
    return SetMap(std::move(v), static_cast<int>(I.size()));
}

OSMor block_assemble(const SetMap& f, const std::vector<OSMor>& gs) {
    require(static_cast<int>(gs.size()) == f.tgt, "block_assemble: arity mismatch");
    std::vector<int> offset(f.tgt + 1, 0);
    for (int i = 1; i <= f.tgt; ++i) offset[i] = offset[i - 1] + gs[i - 1].tgt();
    int total = offset[f.tgt];

    std::vector<std::vector<int>> fibers_f(f.tgt);
    for (int x = 1; x <= f.src(); ++x) fibers_f[f(x) - 1].push_back(x);

    std::vector<int> himg(f.src());
    std::vector<std::vector<int>> hfibers(total);
    for (int i = 1; i <= f.tgt; ++i) {
        const OSMor& g = gs[i - 1];
        const std::vector<int>& fib = fibers_f[i - 1]; // increasing enumeration
        require(g.src() == static_cast<int>(fib.size()),
                "block_assemble: block source must match fiber size");
        SetMap gu = g.underlying();
        for (size_t r = 0; r < fib.size(); ++r)
            himg[fib[r] - 1] = offset[i - 1] + gu(static_cast<int>(r) + 1);
        std::vector<std::vector<int>> gf = g.ordered_fibers();
        for (int s = 1; s <= g.tgt(); ++s)
            for (int pos : gf[s - 1])
                hfibers[offset[i - 1] + s - 1].push_back(fib[pos - 1]);
    }
    return from_fibers(SetMap(std::move(himg), total), hfibers);
}

OMap block_assemble(const OMap& f, const std::vector<OMap>& gs) {
    std::vector<OSMor> lifted;
    lifted.reserve(gs.size());
    for (const OMap& g : gs) lifted.push_back(OSMor::natural(g));
    OSMor h = block_assemble(as_setmap(f), lifted);
    assert(h.pi == Perm::identity(h.src()));
    return h.f;
}

OSMor face(const OSMor& x, int i) {
    return compose(x, OSMor::natural(OMap::delta(x.src(), i)));
}

OSMor degeneracy(const OSMor& x, int i) {
    return compose(x, OSMor::natural(OMap::sigma(x.src(), i)));
}

// ---------------------------------------------------------------- printing

static std::string bracket(const std::vector<int>& v) {
    std::ostringstream os;
    os << '[';
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    os << ']';
    return os.str();
}

std::string to_string(const Perm& p) { return bracket(p.img); }

std::string to_string(const OMap& f) {
    return bracket(f.img) + "->" + std::to_string(f.tgt);
}

std::string to_string(const SetMap& f) {
    return bracket(f.img) + "->" + std::to_string(f.tgt);
}

std::string to_string(const OSMor& x) {
    return "u=" + bracket(x.underlying().img) + " ; pi=" + bracket(x.pi.img);
}

// ---------------------------------------------------------------- enumeration

std::vector<Perm> all_perms(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Perm> out;
    do {
        Perm p;
        p.img = v;
        out.push_back(std::move(p));
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

std::vector<OMap> all_omaps(int k, int n) {
    std::vector<OMap> out;
    if (k == 0) {
        out.push_back(OMap({}, n));
        return out;
    }
    if (n == 0) return out;
    std::vector<int> v(k, 1);
    while (true) {
        out.push_back(OMap(v, n));
        int i = k - 1;
        while (i >= 0 && v[i] == n) --i;
        if (i < 0) break;
        int w = v[i] + 1;
        for (int j = i; j < k; ++j) v[j] = w;
    }
    return out;
}

std::vector<SetMap> all_setmaps(int k, int n) {
    std::vector<SetMap> out;
    if (k == 0) {
        out.push_back(SetMap({}, n));
        return out;
    }
    if (n == 0) return out;
    std::vector<int> v(k, 1);
    while (true) {
        out.push_back(SetMap(v, n));
        int i = k - 1;
        while (i >= 0 && v[i] == n) --i;
        if (i < 0) break;
        ++v[i];
        for (int j = i + 1; j < k; ++j) v[j] = 1;
    }
    return out;
}

std::vector<OSMor> all_osmors(int k, int n) {
    std::vector<OSMor> out;
    for (const OMap& f : all_omaps(k, n))
        for (const Perm& p : all_perms(k)) out.push_back(OSMor(f, p));
    return out;
}

std::vector<OSMor> all_surjective_osmors(int k, int n) {
    std::vector<OSMor> out;
    for (const OMap& f : all_omaps(k, n)) {
        if (!f.is_surjective()) continue;
        for (const Perm& p : all_perms(k)) out.push_back(OSMor(f, p));
    }
    return out;
}

size_t perm_lex_rank(const Perm& p) {
    int n = p.n();
    size_t rank = 0;
    for (int i = 1; i <= n; ++i) {
        size_t smaller = 0;
        for (int j = i + 1; j <= n; ++j)
            if (p(j) < p(i)) ++smaller;
        size_t f = 1;
        for (int r = 2; r <= n - i; ++r) f *= r;
        rank += smaller * f;
    }
    return rank;
}

Perm perm_of_lex_rank(int n, size_t rank) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> img;
    img.reserve(n);
    for (int i = n; i >= 1; --i) {
        size_t f = 1;
        for (int r = 2; r <= i - 1; ++r) f *= r;
        size_t q = rank / f;
        rank %= f;
        img.push_back(pool[q]);
        pool.erase(pool.begin() + static_cast<long>(q));
    }
    return Perm(std::move(img));
}

std::vector<std::vector<int>> all_subsets(int m) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << m); ++mask) {
        std::vector<int> I;
        for (int v = 1; v <= m; ++v)
            if (mask & (1 << (v - 1))) I.push_back(v);
        out.push_back(std::move(I));
    }
    return out;
}

} // namespace symjoin
