#include "pplab/group.hpp"

#include <algorithm>
#include <numeric>

namespace pplab {

Perm perm_compose(const Perm& p, const Perm& q) {
    Perm r(q.size());
    for (size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Perm perm_inverse(const Perm& p) {
    Perm r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
    return r;
}

FinGroup::FinGroup(std::vector<std::vector<int>> table, std::vector<Perm> perms)
    : order_(static_cast<int>(table.size())), table_(std::move(table)), perms_(std::move(perms)) {
    if (perms_.size() != static_cast<size_t>(order_)) throw EngineError("group: perm count != order");
    for (int g = 0; g < order_; ++g) perm_index_[perms_[g]] = g;
    if (static_cast<int>(perm_index_.size()) != order_) throw EngineError("group: embedding not faithful");

    // Locate the identity.
    for (int e = 0; e < order_; ++e) {
        bool ok = true;
        for (int g = 0; g < order_ && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
        if (ok) {
            id_ = e;
            break;
        }
    }
    if (id_ < 0) throw EngineError("group: no identity");

    inv_.assign(order_, -1);
    for (int g = 0; g < order_; ++g)
        for (int h = 0; h < order_; ++h)
            if (table_[g][h] == id_ && table_[h][g] == id_) inv_[g] = h;
    validate();
}

void FinGroup::validate() const {
    for (int g = 0; g < order_; ++g) {
        if (static_cast<int>(table_[g].size()) != order_) throw EngineError("group: ragged table");
        if (inv_[g] < 0) throw EngineError("group: missing inverse");
        for (int h = 0; h < order_; ++h) {
            int gh = table_[g][h];
            if (gh < 0 || gh >= order_) throw EngineError("group: table entry out of range");
            if (perm_compose(perms_[g], perms_[h]) != perms_[gh])
                throw EngineError("group: embedding is not a homomorphism");
            for (int k = 0; k < order_; ++k)
                if (table_[table_[g][h]][k] != table_[g][table_[h][k]])
                    throw EngineError("group: associativity fails");
        }
    }
}

int FinGroup::element_of_perm(const Perm& p) const {
    auto it = perm_index_.find(p);
    if (it == perm_index_.end()) throw EngineError("group: permutation not in group");
    return it->second;
}

std::shared_ptr<const FinGroup> FinGroup::trivial() { return symmetric(1); }

std::shared_ptr<const FinGroup> FinGroup::symmetric(int n) {
    if (n < 1) throw EngineError("symmetric group needs n >= 1");
    std::vector<Perm> perms;
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    int order = static_cast<int>(perms.size());
    std::map<Perm, int> index;
    for (int i = 0; i < order; ++i) index[perms[i]] = i;
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h) table[g][h] = index.at(perm_compose(perms[g], perms[h]));
    return std::make_shared<FinGroup>(std::move(table), std::move(perms));
}

std::shared_ptr<const FinGroup> FinGroup::product(
    const std::vector<std::shared_ptr<const FinGroup>>& gs) {
    if (gs.empty()) throw EngineError("group product of empty list");
    int order = 1;
    for (const auto& g : gs) order *= g->order();

    auto unrank = [&](int ix) {
        std::vector<int> t(gs.size());
        for (size_t i = gs.size(); i-- > 0;) {
            t[i] = ix % gs[i]->order();
            ix /= gs[i]->order();
        }
        return t;
    };
    auto rank = [&](const std::vector<int>& t) {
        int ix = 0;
        for (size_t i = 0; i < gs.size(); ++i) ix = ix * gs[i]->order() + t[i];
        return ix;
    };

    std::vector<Perm> perms(order);
    for (int ix = 0; ix < order; ++ix) {
        auto t = unrank(ix);
        Perm p;
        int off = 0;
        for (size_t i = 0; i < gs.size(); ++i) {
            for (int v : gs[i]->perm(t[i])) p.push_back(off + v);
            off += gs[i]->degree();
        }
        perms[ix] = std::move(p);
    }
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int g = 0; g < order; ++g)
        for (int h = 0; h < order; ++h) {
            auto tg = unrank(g), th = unrank(h), r = tg;
            for (size_t i = 0; i < gs.size(); ++i) r[i] = gs[i]->mult(tg[i], th[i]);
            table[g][h] = rank(r);
        }
    return std::make_shared<FinGroup>(std::move(table), std::move(perms));
}

namespace {
// One-element group acting on an n-point set (identically); n = 0 allowed.
std::shared_ptr<const FinGroup> trivial_on_points(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return std::make_shared<FinGroup>(std::vector<std::vector<int>>{{0}}, std::vector<Perm>{p});
}
} // namespace

std::shared_ptr<const FinGroup> FinGroup::symmetric_multi(const std::vector<int>& n) {
    std::vector<std::shared_ptr<const FinGroup>> gs;
    for (int ni : n) gs.push_back(ni >= 1 ? symmetric(ni) : trivial_on_points(0));
    return product(gs);
}

SubgroupEmbedding::SubgroupEmbedding(FinGroupPtr sub_, FinGroupPtr big_, std::vector<int> map_)
    : sub(std::move(sub_)), big(std::move(big_)), map(std::move(map_)) {
    if (static_cast<int>(map.size()) != sub->order()) throw EngineError("embedding: wrong length");
    std::vector<bool> seen(big->order(), false);
    for (int v : map) {
        if (v < 0 || v >= big->order() || seen[v]) throw EngineError("embedding: not injective");
        seen[v] = true;
    }
    for (int g = 0; g < sub->order(); ++g)
        for (int h = 0; h < sub->order(); ++h)
            if (big->mult(map[g], map[h]) != map[sub->mult(g, h)])
                throw EngineError("embedding: not a homomorphism");
}

SubgroupEmbedding SubgroupEmbedding::full(FinGroupPtr g) {
    std::vector<int> m(g->order());
    std::iota(m.begin(), m.end(), 0);
    return SubgroupEmbedding(g, g, std::move(m));
}

SubgroupEmbedding SubgroupEmbedding::trivial_into(FinGroupPtr g) {
    return SubgroupEmbedding(FinGroup::trivial(), g, {g->identity()});
}

SubgroupEmbedding SubgroupEmbedding::young(const std::vector<int>& n, const std::vector<int>& k) {
    if (n.size() != k.size()) throw EngineError("young: length mismatch");
    std::vector<int> split;
    for (size_t i = 0; i < n.size(); ++i) {
        if (k[i] < 0 || k[i] > n[i]) throw EngineError("young: k out of range");
        split.push_back(n[i] - k[i]);
        split.push_back(k[i]);
    }
    auto sub = FinGroup::symmetric_multi(split);
    auto big = FinGroup::symmetric_multi(n);
    // Both act on the same sum(n_i) points, sub with each block split in two,
    // so a sub element's permutation is literally one of the big group's.
    std::vector<int> map(sub->order());
    for (int g = 0; g < sub->order(); ++g) map[g] = big->element_of_perm(sub->perm(g));
    return SubgroupEmbedding(sub, big, std::move(map));
}

std::vector<std::vector<int>> SubgroupEmbedding::left_cosets() const {
    std::vector<int> coset_of(big->order(), -1);
    std::vector<std::vector<int>> cosets;
    for (int g = 0; g < big->order(); ++g) {
        if (coset_of[g] >= 0) continue;
        std::vector<int> c;
        for (int h = 0; h < sub->order(); ++h) c.push_back(big->mult(g, map[h]));
        std::sort(c.begin(), c.end());
        for (int v : c) coset_of[v] = static_cast<int>(cosets.size());
        cosets.push_back(std::move(c));
    }
    return cosets;
}

GroupAction::GroupAction(FinGroupPtr group, Obj object, std::vector<Mor> maps)
    : group_(std::move(group)), object_(std::move(object)), maps_(std::move(maps)) {
    if (maps_.size() != static_cast<size_t>(group_->order()))
        throw EngineError("action: one morphism per group element required");
    const auto& e = engine_for(object_.tag());
    if (!e.equal_morphisms(maps_[group_->identity()], e.identity(object_)))
        throw EngineError("action: identity must act as identity");
    for (int g = 0; g < group_->order(); ++g) {
        if (!e.is_isomorphism(maps_[g])) throw EngineError("action: element acts non-invertibly");
        for (int h = 0; h < group_->order(); ++h)
            if (!e.equal_morphisms(maps_[group_->mult(g, h)], e.compose(maps_[g], maps_[h])))
                throw EngineError("action: not a homomorphism");
    }
}

GroupAction GroupAction::trivial(FinGroupPtr group, const Obj& object) {
    const auto& e = engine_for(object.tag());
    std::vector<Mor> maps(group->order(), e.identity(object));
    return GroupAction(std::move(group), object, std::move(maps));
}

Coinvariants coinvariants(const GroupAction& a) {
    const auto& e = engine_for(a.object().tag());
    int n = a.group()->order();
    std::vector<Obj> copies(n, a.object());
    std::vector<Mor> inj;
    Obj bundle = e.coproduct(copies, &inj);
    std::vector<Mor> legs_u, legs_v;
    for (int g = 0; g < n; ++g) {
        legs_u.push_back(a.action(g));
        legs_v.push_back(e.identity(a.object()));
    }
    Mor u = e.coproduct_map(bundle, legs_u);
    Mor v = e.coproduct_map(bundle, legs_v);
    Mor q = e.coequalizer(u, v);
    return Coinvariants{q.cod(), q};
}

InducedAction induce(const SubgroupEmbedding& emb, const GroupAction& x) {
    if (x.group() != emb.sub && x.group()->order() != emb.sub->order())
        throw EngineError("induce: action group is not the embedded subgroup");
    const auto& e = engine_for(x.object().tag());
    const auto& G = *emb.big;
    const auto& H = *emb.sub;

    std::vector<Obj> copies(G.order(), x.object());
    std::vector<Mor> inj;
    Obj gx = e.coproduct(copies, &inj);

    // h . (g, x) = (g * emb(h)^-1, h . x); coinvariants of this H-action.
    auto translate = [&](int h) {
        std::vector<Mor> legs(G.order());
        for (int g = 0; g < G.order(); ++g)
            legs[g] = e.compose(inj[G.mult(g, G.inverse(emb.map[h]))], x.action(h));
        return e.coproduct_map(gx, legs);
    };

    std::vector<Obj> hcopies(H.order(), gx);
    std::vector<Mor> hinj;
    Obj hbundle = e.coproduct(hcopies, &hinj);
    std::vector<Mor> legs_u, legs_v;
    for (int h = 0; h < H.order(); ++h) {
        legs_u.push_back(translate(h));
        legs_v.push_back(e.identity(gx));
    }
    Mor q = e.coequalizer(e.coproduct_map(hbundle, legs_u), e.coproduct_map(hbundle, legs_v));

    // Left translation by G descends to the quotient.
    std::vector<Mor> maps(G.order());
    for (int a = 0; a < G.order(); ++a) {
        std::vector<Mor> legs(G.order());
        for (int g = 0; g < G.order(); ++g) legs[g] = inj[G.mult(a, g)];
        Mor lambda = e.coproduct_map(gx, legs);
        auto m = e.factor_through_epi(q, e.compose(q, lambda));
        if (!m) throw EngineError("induce: translation does not descend");
        maps[a] = *m;
    }
    auto big_ptr = emb.big;
    return InducedAction{GroupAction(big_ptr, q.cod(), std::move(maps)), q, inj};
}

} // namespace pplab
