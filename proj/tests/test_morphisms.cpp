#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "symjoin/morphisms.hpp"

#include <algorithm>
#include <iterator>
#include <numeric>
#include <random>

using namespace symjoin;

namespace {

constexpr unsigned kSeed = 0xC0FFEE; // all sampled sweeps below use this seed

// Independent composition rule used as an oracle: compose the underlying
// maps; order composite fibers by the outer fiber order of the middle image,
// ties broken by the inner fiber order.
OSMor compose_oracle(const OSMor& a, const OSMor& b) {
    SetMap u = compose(a.underlying(), b.underlying());
    SetMap ub = b.underlying();
    std::vector<std::vector<int>> fibs(u.tgt);
    for (int t = 1; t <= u.tgt; ++t) {
        std::vector<int> fib = u.preimage(t);
        std::sort(fib.begin(), fib.end(), [&](int x, int y) {
            int ax = a.pi(ub(x)), ay = a.pi(ub(y));
            if (ax != ay) return ax < ay;
            return b.pi(x) < b.pi(y);
        });
        fibs[t - 1] = std::move(fib);
    }
    return from_fibers(u, fibs);
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937& rng) {
    std::uniform_int_distribution<size_t> d(0, v.size() - 1);
    return v[d(rng)];
}

} // namespace

TEST_CASE("frozen: canonical decomposition of (1,2,1)") {
    OSMor x = canonical_decompose(SetMap({1, 2, 1}, 2));
    CHECK(x.f == OMap({1, 1, 2}, 2));
    CHECK(x.pi == Perm({1, 3, 2}));
    CHECK(x.pi.sign() == -1);
    CHECK(x.underlying() == SetMap({1, 2, 1}, 2));
}

TEST_CASE("frozen: star pair of (tau, (1,1,2))") {
    StarPair sp = star_decompose(Perm({2, 1}), OMap({1, 1, 2}, 2));
    CHECK(sp.g_star_pi == Perm({2, 3, 1}));
    CHECK(sp.pi_star_g == OMap({1, 2, 2}, 2));
}

TEST_CASE("frozen: block assembly (1,2,1)<id2, id1> = (1,3,2)") {
    OSMor h = block_assemble(SetMap({1, 2, 1}, 2),
                             {OSMor::identity(2), OSMor::identity(1)});
    CHECK(h.underlying() == SetMap({1, 3, 2}, 3));
    // injective, so the normal form is (identity omap, value permutation)
    CHECK(h == canonical_decompose(SetMap({1, 3, 2}, 3)));
    CHECK(h.has_natural_orders());
}

TEST_CASE("frozen: restriction of (1,1,2) to {1}") {
    Restriction r = restrict(OSMor::natural(OMap({1, 1, 2}, 2)), {1});
    CHECK(r.f_I.f == OMap({1, 1}, 2));
    CHECK(r.f_to_I.f == OMap({1, 1}, 1));
    CHECK(r.f_I.pi == Perm::identity(2));
}

TEST_CASE("frozen: transposition squares to the identity in OS") {
    OSMor t(OMap::identity(2), Perm({2, 1}));
    CHECK(compose(t, t) == OSMor::identity(2));
}

TEST_CASE("frozen: delta/sigma generators and rendering") {
    CHECK(OMap::delta(3, 2) == OMap({1, 3}, 3));
    CHECK(OMap::sigma(2, 1) == OMap({1, 1, 2}, 2));
    OSMor x(OMap({1, 1, 2}, 2), Perm({1, 3, 2}));
    CHECK(to_string(x) == "u=[1,2,1] ; pi=[1,3,2]");
}

TEST_CASE("morphism counts: |OS(k,n)| = C(n+k-1,k) k!") {
    auto binom = [](int n, int k) {
        long long r = 1;
        for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
        return r;
    };
    for (int k = 0; k <= 5; ++k)
        for (int n = 0; n <= 5; ++n) {
            long long fact = 1;
            for (int i = 2; i <= k; ++i) fact *= i;
            long long expect = (n == 0 && k > 0) ? 0 : binom(n + k - 1, k) * fact;
            CHECK(static_cast<long long>(all_osmors(k, n).size()) == expect);
            CHECK(static_cast<long long>(all_omaps(k, n).size()) ==
                  ((n == 0 && k > 0) ? 0 : binom(n + k - 1, k)));
        }
}

TEST_CASE("pair representation is a bijection with (set map, fiber orders)") {
    for (int k = 0; k <= 4; ++k)
        for (int n = 1; n <= 3; ++n) {
            size_t count = 0;
            for (const SetMap& u : all_setmaps(k, n)) {
                // every choice of fiber orderings yields a distinct normal form
                std::vector<std::vector<int>> base(n);
                for (int t = 1; t <= n; ++t) base[t - 1] = u.preimage(t);
                std::vector<std::vector<std::vector<int>>> choices(n);
                for (int t = 0; t < n; ++t) {
                    std::vector<int> fib = base[t];
                    std::sort(fib.begin(), fib.end());
                    do choices[t].push_back(fib);
                    while (std::next_permutation(fib.begin(), fib.end()));
                }
                std::vector<size_t> idx(n, 0);
                while (true) {
                    std::vector<std::vector<int>> fibs(n);
                    for (int t = 0; t < n; ++t) fibs[t] = choices[t][idx[t]];
                    OSMor x = from_fibers(u, fibs);
                    CHECK(x.underlying() == u);
                    CHECK(x.ordered_fibers() == fibs);
                    ++count;
                    int t = n - 1;
                    while (t >= 0 && ++idx[t] == choices[t].size()) idx[t--] = 0;
                    if (t < 0) break;
                }
            }
            CHECK(count == all_osmors(k, n).size());
        }
}

TEST_CASE("composition agrees with the sorting oracle, exhaustive <= 4") {
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k)
            for (int j = 0; j <= 4; ++j) {
                auto as = all_osmors(k, n);
                auto bs = all_osmors(j, k);
                for (const OSMor& a : as)
                    for (const OSMor& b : bs)
                        REQUIRE(compose(a, b) == compose_oracle(a, b));
            }
}

TEST_CASE("composition agrees with the sorting oracle, sampled at size 5") {
    std::mt19937 rng(kSeed);
    auto as = all_osmors(5, 4);
    auto bs = all_osmors(5, 5);
    auto cs = all_osmors(4, 5);
    for (int trial = 0; trial < 3000; ++trial) {
        const OSMor& a = pick(as, rng);
        const OSMor& b = pick(bs, rng);
        const OSMor& c = pick(cs, rng);
        REQUIRE(compose(a, b) == compose_oracle(a, b));
        REQUIRE(compose(b, c) == compose_oracle(b, c));
        REQUIRE(compose(compose(a, b), c) == compose(a, compose(b, c)));
    }
}

TEST_CASE("associativity and units, exhaustive <= 3") {
    for (int n0 = 0; n0 <= 3; ++n0)
        for (int n1 = 0; n1 <= 3; ++n1)
            for (int n2 = 0; n2 <= 3; ++n2)
                for (int n3 = 0; n3 <= 3; ++n3) {
                    auto as = all_osmors(n2, n3);
                    auto bs = all_osmors(n1, n2);
                    auto cs = all_osmors(n0, n1);
                    for (const OSMor& a : as)
                        for (const OSMor& b : bs) {
                            OSMor ab = compose(a, b);
                            CHECK(compose(a, OSMor::identity(n2)) == a);
                            CHECK(compose(OSMor::identity(n3), a) == a);
                            for (const OSMor& c : cs)
                                REQUIRE(compose(ab, c) == compose(a, compose(b, c)));
                        }
                }
}

TEST_CASE("faithful functors: O and Sigma_n into OS, forgetful to Set") {
    for (int n = 0; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k)
            for (int j = 0; j <= 4; ++j) {
                for (const OMap& f : all_omaps(k, n))
                    for (const OMap& g : all_omaps(j, k))
                        CHECK(OSMor::natural(compose(f, g)) ==
                              compose(OSMor::natural(f), OSMor::natural(g)));
            }
    for (int n = 0; n <= 4; ++n)
        for (const Perm& p : all_perms(n))
            for (const Perm& q : all_perms(n))
                CHECK(OSMor::from_perm(compose(p, q)) ==
                      compose(OSMor::from_perm(p), OSMor::from_perm(q)));
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= 3; ++k)
            for (int j = 0; j <= 3; ++j)
                for (const OSMor& a : all_osmors(k, n))
                    for (const OSMor& b : all_osmors(j, k))
                        CHECK(compose(a, b).underlying() ==
                              compose(a.underlying(), b.underlying()));
}

TEST_CASE("star pair is the unique solution, exhaustive <= 4") {
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= 4; ++k) {
            auto perms_n = all_perms(n);
            auto gs = all_omaps(k, n);
            auto perms_k = all_perms(k);
            auto hs = all_omaps(k, n);
            for (const Perm& pi : perms_n)
                for (const OMap& g : gs) {
                    StarPair sp = star_decompose(pi, g);
                    SetMap lhs = compose(as_setmap(pi), as_setmap(g));
                    CHECK(compose(as_setmap(sp.pi_star_g), as_setmap(sp.g_star_pi)) == lhs);
                    // g*pi must be increasing on every fiber of g
                    for (int t = 1; t <= n; ++t) {
                        std::vector<int> fib = as_setmap(g).preimage(t);
                        for (size_t r = 1; r < fib.size(); ++r)
                            CHECK(sp.g_star_pi(fib[r - 1]) < sp.g_star_pi(fib[r]));
                    }
                    int solutions = 0;
                    for (const Perm& rho : perms_k)
                        for (const OMap& h : hs) {
                            if (compose(as_setmap(h), as_setmap(rho)) != lhs) continue;
                            bool mono = true;
                            for (int t = 1; t <= n && mono; ++t) {
                                std::vector<int> fib = as_setmap(g).preimage(t);
                                for (size_t r = 1; r < fib.size(); ++r)
                                    if (rho(fib[r - 1]) > rho(fib[r])) mono = false;
                            }
                            if (mono) ++solutions;
                        }
                    REQUIRE(solutions == 1);
                }
        }
}

TEST_CASE("(P1): including the corestriction recovers the restriction") {
    // i_I o f^I = f o i_{f^-1(I)}, exhaustive in OS for source/target <= 5
    for (int m = 0; m <= 5; ++m)
        for (int k = 0; k <= 5; ++k) {
            auto subsets = all_subsets(m);
            for (const OSMor& x : all_osmors(k, m))
                for (const auto& I : subsets) {
                    Restriction r = restrict(x, I);
                    OSMor lhs = compose(OSMor::natural(include_subset(I, m)), r.f_to_I);
                    REQUIRE(lhs == r.f_I);
                    std::vector<int> B = x.underlying().preimage_of(I);
                    OSMor rhs = compose(x, OSMor::natural(include_subset(B, k)));
                    REQUIRE(r.f_I == rhs);
                }
        }
}

TEST_CASE("(P2): assembly commutes with precomposition, exhaustive OS <= 3") {
    // (f o g)<h_i o g^{f^-1(i)}> = f<h_vec> o g
    for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 3; ++k)
            for (int j = 0; j <= 3; ++j)
                for (const OSMor& f : all_osmors(k, n))
                    for (const OSMor& g : all_osmors(j, k)) {
                        std::vector<int> a(n);
                        SetMap uf = f.underlying();
                        for (int i = 1; i <= n; ++i)
                            a[i - 1] = static_cast<int>(uf.preimage(i).size());
                        // enumerate block fillers with targets <= 2
                        std::vector<std::vector<OSMor>> hs(n);
                        for (int i = 0; i < n; ++i)
                            for (int b = (a[i] ? 1 : 0); b <= 2; ++b)
                                for (const OSMor& h : all_osmors(a[i], b))
                                    hs[i].push_back(h);
                        std::vector<size_t> idx(n, 0);
                        while (true) {
                            std::vector<OSMor> h(n);
                            for (int i = 0; i < n; ++i) h[i] = hs[i][idx[i]];
                            OSMor left_f = block_assemble(uf, h);
                            OSMor rhs = compose(left_f, g);
                            std::vector<OSMor> hg(n);
                            for (int i = 1; i <= n; ++i)
                                hg[i - 1] = compose(
                                    h[i - 1], restrict(g, uf.preimage(i)).f_to_I);
                            OSMor lhs = block_assemble(compose(f, g).underlying(), hg);
                            REQUIRE(lhs == rhs);
                            int t = n - 1;
                            while (t >= 0 && ++idx[t] == hs[t].size()) idx[t--] = 0;
                            if (t < 0) break;
                        }
                    }
}

TEST_CASE("(P3): restriction-corestriction is functorial") {
    // (f o g)^I = f^I o g^{f^-1(I)}; exhaustive in O at sizes <= 5 and in OS
    // at sizes <= 3, sampled OS at size 4
    for (int m = 0; m <= 5; ++m)
        for (int k = 0; k <= 5; ++k)
            for (int j = 0; j <= 5; ++j) {
                auto subsets = all_subsets(m);
                for (const OMap& f : all_omaps(k, m))
                    for (const OMap& g : all_omaps(j, k))
                        for (const auto& I : subsets) {
                            OMap lhs = restrict_omap(compose(f, g), I);
                            OMap rhs = compose(
                                restrict_omap(f, I),
                                restrict_omap(g, as_setmap(f).preimage_of(I)));
                            REQUIRE(lhs == rhs);
                        }
            }
    auto check_os = [](const OSMor& f, const OSMor& g, const std::vector<int>& I) {
        OSMor lhs = restrict(compose(f, g), I).f_to_I;
        OSMor rhs = compose(restrict(f, I).f_to_I,
                            restrict(g, f.underlying().preimage_of(I)).f_to_I);
        REQUIRE(lhs == rhs);
    };
    for (int m = 0; m <= 3; ++m)
        for (int k = 0; k <= 3; ++k)
            for (int j = 0; j <= 3; ++j) {
                auto subsets = all_subsets(m);
                for (const OSMor& f : all_osmors(k, m))
                    for (const OSMor& g : all_osmors(j, k))
                        for (const auto& I : subsets) check_os(f, g, I);
            }
    std::mt19937 rng(kSeed);
    auto fs = all_osmors(4, 4);
    auto gs = all_osmors(4, 4);
    auto subsets = all_subsets(4);
    for (int trial = 0; trial < 20000; ++trial)
        check_os(pick(fs, rng), pick(gs, rng), pick(subsets, rng));
}

TEST_CASE("(P4): composing inclusions intersects the subsets") {
    for (int m = 0; m <= 5; ++m) {
        auto subsets = all_subsets(m);
        for (const auto& A : subsets)
            for (const auto& B : subsets) {
                OMap iB = include_subset(B, m);
                OMap lhs = compose(include_subset(A, m), restrict_omap(iB, A));
                std::vector<int> AcapB;
                std::set_intersection(A.begin(), A.end(), B.begin(), B.end(),
                                      std::back_inserter(AcapB));
                REQUIRE(lhs == include_subset(AcapB, m));
            }
    }
}

TEST_CASE("block assembly solves the defining block equations uniquely") {
    for (int n = 1; n <= 2; ++n)
        for (int k = 0; k <= 3; ++k)
            for (const SetMap& f : all_setmaps(k, n)) {
                std::vector<int> a(n);
                for (int i = 1; i <= n; ++i)
                    a[i - 1] = static_cast<int>(f.preimage(i).size());
                std::vector<std::vector<OSMor>> gs(n);
                for (int i = 0; i < n; ++i)
                    for (int b = (a[i] ? 1 : 0); b <= 2; ++b)
                        for (const OSMor& g : all_osmors(a[i], b)) gs[i].push_back(g);
                std::vector<size_t> idx(n, 0);
                while (true) {
                    std::vector<OSMor> g(n);
                    for (int i = 0; i < n; ++i) g[i] = gs[i][idx[i]];
                    OSMor h = block_assemble(f, g);
                    int off = 0;
                    for (int i = 0; i < n; ++i) {
                        std::vector<int> block(g[i].tgt());
                        std::iota(block.begin(), block.end(), off + 1);
                        // the block restriction of h is g_i on the nose
                        CHECK(restrict(h, block).f_to_I == g[i]);
                        CHECK(h.underlying().preimage_of(block) ==
                              f.preimage(i + 1));
                        off += g[i].tgt();
                    }
                    // uniqueness at tiny sizes by exhaustive search
                    if (h.src() <= 2) {
                        int hits = 0;
                        for (const OSMor& cand : all_osmors(h.src(), h.tgt())) {
                            bool ok = true;
                            int o2 = 0;
                            for (int i = 0; i < n && ok; ++i) {
                                std::vector<int> block(g[i].tgt());
                                std::iota(block.begin(), block.end(), o2 + 1);
                                ok = restrict(cand, block).f_to_I == g[i] &&
                                     cand.underlying().preimage_of(block) ==
                                         f.preimage(i + 1);
                                o2 += g[i].tgt();
                            }
                            if (ok) ++hits;
                        }
                        REQUIRE(hits == 1);
                    }
                    int t = n - 1;
                    while (t >= 0 && ++idx[t] == gs[t].size()) idx[t--] = 0;
                    if (t < 0) break;
                }
            }
}

TEST_CASE("nested block assembly flattens") {
    // (f<g_vec>)<h_vec> = f<g_1<h_1*>, ..., g_n<h_n*>> with h indexed blockwise
    std::mt19937 rng(kSeed);
    for (int trial = 0; trial < 4000; ++trial) {
        std::uniform_int_distribution<int> dn(1, 2), dk(0, 3), db(1, 2);
        int n = dn(rng);
        auto fs = all_setmaps(dk(rng), n);
        if (fs.empty()) continue;
        SetMap f = pick(fs, rng);
        std::vector<OSMor> g(n);
        std::vector<std::vector<OSMor>> h(n);
        bool feasible = true;
        for (int i = 1; i <= n; ++i) {
            int ai = static_cast<int>(f.preimage(i).size());
            auto cand = all_osmors(ai, ai ? db(rng) : 0);
            if (cand.empty()) { feasible = false; break; }
            g[i - 1] = pick(cand, rng);
            h[i - 1].resize(g[i - 1].tgt());
            for (int j = 1; j <= g[i - 1].tgt(); ++j) {
                int aij = static_cast<int>(
                    g[i - 1].underlying().preimage(j).size());
                auto c2 = all_osmors(aij, aij ? db(rng) : 0);
                if (c2.empty()) { feasible = false; break; }
                h[i - 1][j - 1] = pick(c2, rng);
            }
            if (!feasible) break;
        }
        if (!feasible) continue;
        OSMor G = block_assemble(f, g);
        std::vector<OSMor> flat;
        for (int i = 0; i < n; ++i)
            for (const OSMor& x : h[i]) flat.push_back(x);
        OSMor lhs = block_assemble(G.underlying(), flat);
        std::vector<OSMor> inner(n);
        for (int i = 0; i < n; ++i)
            inner[i] = block_assemble(g[i].underlying(), h[i]);
        OSMor rhs = block_assemble(f, inner);
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("no morphisms into the empty object; unique map out of it") {
    CHECK(all_osmors(1, 0).empty());
    CHECK(all_osmors(0, 3).size() == 1);
    CHECK_THROWS_AS(OMap({1}, 0), std::invalid_argument);
    CHECK_THROWS_AS(SetMap({2}, 1), std::invalid_argument);
    CHECK_THROWS_AS(Perm({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(compose(OSMor::identity(2), OSMor::identity(3)),
                    std::invalid_argument);
}

TEST_CASE("simplicial generator relations for delta and sigma") {
    for (int n = 1; n <= 4; ++n) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n + 1; ++j)
                CHECK(compose(OMap::delta(n + 1, j), OMap::delta(n, i)) ==
                      compose(OMap::delta(n + 1, i), OMap::delta(n, j - 1)));
        for (int i = 1; i <= n; ++i)
            for (int j = i; j <= n; ++j)
                if (j >= i)
                    CHECK(compose(OMap::sigma(n, i), OMap::sigma(n + 1, j + 1)) ==
                          compose(OMap::sigma(n, j), OMap::sigma(n + 1, i)));
    }
}
