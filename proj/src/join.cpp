#include "symjoin/join.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace symjoin {

std::vector<SetMap> join_summands(Variance kind, int m, int r) {
    if (kind == Variance::OSigma) return all_setmaps(m, r);
    std::vector<SetMap> out;
    for (const OMap& f : all_omaps(m, r)) out.push_back(as_setmap(f));
    return out;
}

JoinPresheaf::JoinPresheaf(Variance kind, std::vector<PresheafPtr> factors)
    : Presheaf(kind), factors_(std::move(factors)) {
    require(!factors_.empty(), "JoinPresheaf: needs at least one factor");
    for (auto& f : factors_) {
        require(f != nullptr, "JoinPresheaf: null factor");
        require(f->variance == variance,
                "JoinPresheaf: factor variance must match the join kind");
    }
}

const JoinPresheaf::Table& JoinPresheaf::table(int degree) const {
    require(degree >= 0, "JoinPresheaf: negative degree");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = tables_.find(degree);
    if (it != tables_.end()) return it->second;
    Table t;
    t.summands = join_summands(variance, degree, (int)factors_.size());
    for (size_t s = 0; s < t.summands.size(); ++s) {
        t.summand_index[t.summands[s]] = s;
        std::vector<size_t> cards;
        size_t block = 1;
        for (size_t i = 0; i < factors_.size(); ++i) {
            size_t c = factors_[i]->card((int)t.summands[s].preimage((int)i + 1).size());
            cards.push_back(c);
            block *= c;
        }
        t.offsets.push_back(t.total);
        t.part_cards.push_back(std::move(cards));
        t.total += block;
    }
    return tables_.emplace(degree, std::move(t)).first->second;
}

size_t JoinPresheaf::card(int degree) const { return table(degree).total; }

JoinPresheaf::Element JoinPresheaf::decode(int degree, size_t idx) const {
    const Table& t = table(degree);
    require(idx < t.total, "JoinPresheaf::decode: index out of range");
    size_t s = t.offsets.size() - 1;
    while (t.offsets[s] > idx) --s;
    size_t pos = idx - t.offsets[s];
    Element e;
    e.summand = t.summands[s];
    e.parts.resize(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
        size_t c = t.part_cards[s][i];
        e.parts[i] = pos % c;
        pos /= c;
    }
    return e;
}

size_t JoinPresheaf::encode(const Element& e) const {
    const Table& t = table(e.summand.src());
    auto it = t.summand_index.find(e.summand);
    require(it != t.summand_index.end(),
            "JoinPresheaf::encode: summand not admissible for this join");
    size_t s = it->second;
    require(e.parts.size() == factors_.size(),
            "JoinPresheaf::encode: wrong number of parts");
    size_t pos = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
        require(e.parts[i] < t.part_cards[s][i],
                "JoinPresheaf::encode: part index out of range");
        pos = pos * t.part_cards[s][i] + e.parts[i];
    }
    return t.offsets[s] + pos;
}

JoinPresheaf::Element JoinPresheaf::act_element(const Element& e,
                                                const OSMor& m) const {
    require(e.summand.src() == m.tgt(),
            "JoinPresheaf::act_element: degree mismatch");
    Element out;
    out.summand = compose(e.summand, m.underlying());
    out.parts.resize(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
        std::vector<int> fiber = e.summand.preimage((int)i + 1);
        out.parts[i] = factors_[i]->act(e.parts[i], restrict(m, fiber).f_to_I);
    }
    return out;
}

size_t JoinPresheaf::act(size_t idx, const OSMor& m) const {
    check_variance(m);
    return encode(act_element(decode(m.tgt(), idx), m));
}

std::string JoinPresheaf::label(int degree, size_t idx) const {
    Element e = decode(degree, idx);
    std::ostringstream os;
    os << "phi=[";
    for (int i = 1; i <= e.summand.src(); ++i) os << (i > 1 ? "," : "") << e.summand(i);
    os << "] ; (";
    for (size_t i = 0; i < factors_.size(); ++i) {
        int k = (int)e.summand.preimage((int)i + 1).size();
        os << (i ? " | " : "") << factors_[i]->label(k, e.parts[i]);
    }
    os << ")";
    return os.str();
}

std::shared_ptr<const JoinPresheaf> join(Variance kind,
                                         std::vector<PresheafPtr> factors) {
    return std::make_shared<const JoinPresheaf>(kind, std::move(factors));
}

// ----------------------------------------------------- set map block algebra

SetMap block_assemble_set(const SetMap& f, const std::vector<SetMap>& gs) {
    require((size_t)f.tgt == gs.size(), "block_assemble_set: arity mismatch");
    std::vector<int> offsets(gs.size() + 1, 0);
    for (size_t i = 0; i < gs.size(); ++i) offsets[i + 1] = offsets[i] + gs[i].tgt;
    std::vector<int> rank(f.src() + 1, 0), seen(f.tgt + 1, 0);
    std::vector<int> img(f.src());
    for (int x = 1; x <= f.src(); ++x) {
        int i = f(x);
        rank[x] = ++seen[i];
        require(rank[x] <= gs[i - 1].src(), "block_assemble_set: fiber too large");
        img[x - 1] = offsets[i - 1] + gs[i - 1](rank[x]);
    }
    for (int i = 1; i <= f.tgt; ++i)
        require(seen[i] == gs[i - 1].src(),
                "block_assemble_set: source of g_i must be the fiber size");
    return SetMap(std::move(img), offsets.back());
}

std::pair<SetMap, std::vector<SetMap>> block_decompose_set(
    const SetMap& h, const std::vector<int>& tgts) {
    std::vector<int> offsets(tgts.size() + 1, 0);
    for (size_t i = 0; i < tgts.size(); ++i) {
        require(tgts[i] >= 0, "block_decompose_set: negative block size");
        offsets[i + 1] = offsets[i] + tgts[i];
    }
    require(h.tgt == offsets.back(), "block_decompose_set: block sizes must sum to the target");
    std::vector<int> phi_img(h.src());
    std::vector<std::vector<int>> g_img(tgts.size());
    for (int x = 1; x <= h.src(); ++x) {
        int v = h(x);
        size_t i = (size_t)(std::upper_bound(offsets.begin(), offsets.end(), v - 1) -
                            offsets.begin());
        phi_img[x - 1] = (int)i;
        g_img[i - 1].push_back(v - offsets[i - 1]);
    }
    std::vector<SetMap> gs;
    for (size_t i = 0; i < tgts.size(); ++i)
        gs.push_back(SetMap(std::move(g_img[i]), tgts[i]));
    return {SetMap(std::move(phi_img), (int)tgts.size()), std::move(gs)};
}

// ---------------------------------------------------------- identifications

SigmaFreeJoinIso sigma_free_join_iso(std::vector<PresheafPtr> bases) {
    for (auto& b : bases)
        require(b && b->variance == Variance::O,
                "sigma_free_join_iso: bases must be O-variance");
    SigmaFreeJoinIso iso;
    std::vector<PresheafPtr> freed;
    for (auto& b : bases) freed.push_back(sigma_free(b));
    iso.sigma_join = join(Variance::OSigma, std::move(freed));
    iso.plain_join = join(Variance::O, std::move(bases));
    iso.free_join = std::make_shared<const SigmaFreePresheaf>(iso.plain_join);
    return iso;
}

namespace {
const SigmaFreePresheaf& as_sigma_free(const PresheafPtr& p) {
    auto q = std::dynamic_pointer_cast<const SigmaFreePresheaf>(p);
    require(q != nullptr, "expected a freed factor");
    return *q;
}
} // namespace

size_t SigmaFreeJoinIso::forward(int degree, size_t idx) const {
    JoinPresheaf::Element e = sigma_join->decode(degree, idx);
    OSMor nf = canonical_decompose(e.summand); // summand = g_phi o pi_phi
    std::vector<int> block(degree + 1, 0);     // block-diagonal sum of the pi_i
    JoinPresheaf::Element base;
    base.summand = as_setmap(nf.f);
    int offset = 0;
    for (size_t i = 0; i < sigma_join->arity(); ++i) {
        auto [x, pi] = as_sigma_free(sigma_join->factor(i))
                           .decode((int)e.summand.preimage((int)i + 1).size(),
                                   e.parts[i]);
        for (int v = 1; v <= pi.n(); ++v) block[offset + v] = offset + pi(v);
        offset += pi.n();
        base.parts.push_back(x);
    }
    Perm total = compose(Perm{std::vector<int>(block.begin() + 1, block.end())},
                         nf.pi);
    return free_join->encode(degree, plain_join->encode(base), total);
}

size_t SigmaFreeJoinIso::backward(int degree, size_t idx) const {
    auto [base_idx, total] = free_join->decode(degree, idx);
    JoinPresheaf::Element base = plain_join->decode(degree, base_idx);
    JoinPresheaf::Element e;
    e.summand = compose(base.summand, as_setmap(total));
    OSMor nf = canonical_decompose(e.summand);
    require(as_setmap(nf.f) == base.summand,
            "sigma_free_join_iso: normal form drifted");
    Perm block = compose(total, nf.pi.inverse());
    int offset = 0;
    for (size_t i = 0; i < plain_join->arity(); ++i) {
        int k = (int)base.summand.preimage((int)i + 1).size();
        std::vector<int> img(k);
        for (int v = 1; v <= k; ++v) {
            img[v - 1] = block(offset + v) - offset;
            require(img[v - 1] >= 1 && img[v - 1] <= k,
                    "sigma_free_join_iso: permutation is not block diagonal");
        }
        e.parts.push_back(as_sigma_free(sigma_join->factor(i))
                              .encode(k, base.parts[i], Perm{std::move(img)}));
        offset += k;
    }
    return sigma_join->encode(e);
}

NestedJoinIso nested_join_iso(Variance kind,
                              std::vector<std::vector<PresheafPtr>> groups) {
    NestedJoinIso iso;
    std::vector<PresheafPtr> inners, all;
    for (auto& g : groups) {
        inners.push_back(join(kind, g));
        all.insert(all.end(), g.begin(), g.end());
    }
    iso.nested = join(kind, std::move(inners));
    iso.flat = join(kind, std::move(all));
    return iso;
}

size_t NestedJoinIso::flatten(int degree, size_t idx) const {
    JoinPresheaf::Element ne = nested->decode(degree, idx);
    std::vector<SetMap> gs;
    JoinPresheaf::Element fe;
    for (size_t i = 0; i < nested->arity(); ++i) {
        auto inner = std::dynamic_pointer_cast<const JoinPresheaf>(nested->factor(i));
        JoinPresheaf::Element ie =
            inner->decode((int)ne.summand.preimage((int)i + 1).size(), ne.parts[i]);
        gs.push_back(ie.summand);
        fe.parts.insert(fe.parts.end(), ie.parts.begin(), ie.parts.end());
    }
    fe.summand = block_assemble_set(ne.summand, gs);
    return flat->encode(fe);
}

size_t NestedJoinIso::unflatten(int degree, size_t idx) const {
    JoinPresheaf::Element fe = flat->decode(degree, idx);
    std::vector<int> tgts;
    for (size_t i = 0; i < nested->arity(); ++i)
        tgts.push_back((int)std::dynamic_pointer_cast<const JoinPresheaf>(
                           nested->factor(i))
                           ->arity());
    auto [phi, gs] = block_decompose_set(fe.summand, tgts);
    JoinPresheaf::Element ne;
    ne.summand = phi;
    size_t part_cursor = 0;
    for (size_t i = 0; i < nested->arity(); ++i) {
        auto inner = std::dynamic_pointer_cast<const JoinPresheaf>(nested->factor(i));
        JoinPresheaf::Element ie;
        ie.summand = gs[i];
        for (size_t k = 0; k < inner->arity(); ++k)
            ie.parts.push_back(fe.parts[part_cursor++]);
        ne.parts.push_back(inner->encode(ie));
    }
    return nested->encode(ne);
}

size_t t_sigma(const JoinPresheaf& src, const JoinPresheaf& tgt,
               const Perm& sigma, int degree, size_t idx) {
    require(src.variance == Variance::OSigma && tgt.variance == Variance::OSigma,
            "t_sigma: symmetric joins only");
    require((size_t)sigma.n() == src.arity() && src.arity() == tgt.arity(),
            "t_sigma: arity mismatch");
    Perm inv = sigma.inverse();
    for (size_t i = 0; i < tgt.arity(); ++i)
        require(tgt.factor(i) == src.factor((size_t)inv((int)i + 1) - 1),
                "t_sigma: target join must have the permuted factors");
    JoinPresheaf::Element e = src.decode(degree, idx);
    JoinPresheaf::Element out;
    out.summand = compose(as_setmap(sigma), e.summand);
    for (size_t i = 0; i < tgt.arity(); ++i)
        out.parts.push_back(e.parts[(size_t)inv((int)i + 1) - 1]);
    return tgt.encode(out);
}

// ------------------------------------------------------------ canonical maps

size_t alpha(const JoinPresheaf& j, const OSMor& f, const std::vector<size_t>& xs) {
    require((size_t)f.tgt() == j.arity(), "alpha: arity mismatch");
    require(xs.size() == j.arity(), "alpha: one element per factor required");
    const int m = f.src();
    SetMap u = f.underlying();
    JoinPresheaf::Element e;
    e.summand = u;
    for (size_t i = 0; i < j.arity(); ++i) {
        OMap inc = include_subset(u.preimage((int)i + 1), m);
        e.parts.push_back(j.factor(i)->act(xs[i], OSMor::natural(inc)));
    }
    return j.encode(e);
}

OSMor psi(const OSMor& f, const std::vector<OSMor>& gs) {
    require((size_t)f.tgt() == gs.size(), "psi: arity mismatch");
    const int m = f.src();
    SetMap u = f.underlying();
    std::vector<OSMor> parts;
    for (size_t i = 0; i < gs.size(); ++i) {
        require(gs[i].src() == m, "psi: every g must share the source of f");
        OMap inc = include_subset(u.preimage((int)i + 1), m);
        parts.push_back(compose(gs[i], OSMor::natural(inc)));
    }
    return block_assemble(u, parts);
}

size_t coaction_set_level(const JoinPresheaf& j, const OSMor& f, size_t x_idx) {
    return alpha(j, f, std::vector<size_t>(j.arity(), x_idx));
}

PresheafPair relative_join(Variance kind, std::vector<PresheafPair> pairs) {
    std::vector<PresheafPtr> factors;
    for (auto& p : pairs) factors.push_back(p.total);
    auto total = join(kind, std::move(factors));
    auto subs = std::make_shared<std::vector<PresheafPair>>(std::move(pairs));
    return PresheafPair{
        total, [total, subs](int degree, size_t idx) {
            JoinPresheaf::Element e = total->decode(degree, idx);
            if (!e.summand.is_surjective()) return true;
            for (size_t i = 0; i < total->arity(); ++i) {
                int k = (int)e.summand.preimage((int)i + 1).size();
                if ((*subs)[i].in_sub(k, e.parts[i])) return true;
            }
            return false;
        }};
}

} // namespace symjoin
