#include "pplab/finset.hpp"

#include "pplab/union_find.hpp"

#include <algorithm>
#include <numeric>

namespace pplab {

int FinSetObj::tuple_to_index(const std::vector<int>& t) const {
    if (t.size() != factors_.size()) throw EngineError("tuple arity mismatch");
    int ix = 0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 0 || t[i] >= factors_[i]->size()) throw EngineError("tuple entry out of range");
        ix = ix * factors_[i]->size() + t[i];
    }
    return ix;
}

std::vector<int> FinSetObj::index_to_tuple(int ix) const {
    std::vector<int> t(factors_.size());
    for (size_t i = factors_.size(); i-- > 0;) {
        int s = factors_[i]->size();
        t[i] = ix % s;
        ix /= s;
    }
    return t;
}

std::shared_ptr<const FinSetObj> FinSetObj::make_product(
    std::vector<std::shared_ptr<const FinSetObj>> factors) {
    int size = 1;
    for (const auto& f : factors) size *= f->size();
    auto obj = std::make_shared<FinSetObj>(size);
    obj->factors_ = std::move(factors);
    return obj;
}

FinSetMap::FinSetMap(std::shared_ptr<const FinSetObj> dom, std::shared_ptr<const FinSetObj> cod,
                     std::vector<int> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table)) {
    if (static_cast<int>(table_.size()) != dom_->size()) throw EngineError("image table length != domain size");
    for (int v : table_)
        if (v < 0 || v >= cod_->size()) throw EngineError("image table entry out of codomain");
}

Mor make_finset_map(std::shared_ptr<const FinSetObj> dom, std::shared_ptr<const FinSetObj> cod,
                    std::vector<int> table) {
    return Mor(std::make_shared<FinSetMap>(std::move(dom), std::move(cod), std::move(table)));
}

bool finset_is_iso(const Mor& f) { return finset_engine().is_isomorphism(f); }

namespace {

class FinSetEngine final : public EngineContract {
public:
    EngineTag tag() const override { return EngineTag::FinSet; }

    Obj initial() const override { return Obj(FinSetObj::make(0)); }
    Obj unit() const override { return Obj(FinSetObj::make(1)); }

    Mor identity(const Obj& x) const override {
        std::vector<int> t(x.finset().size());
        std::iota(t.begin(), t.end(), 0);
        return make_finset_map(x.finset_ptr(), x.finset_ptr(), std::move(t));
    }

    Mor compose(const Mor& g, const Mor& f) const override {
        const auto& fm = f.finset();
        const auto& gm = g.finset();
        if (fm.cod_ptr()->size() != gm.dom_ptr()->size())
            throw EngineError("compose: codomain/domain mismatch");
        std::vector<int> t(fm.table().size());
        for (size_t i = 0; i < t.size(); ++i) t[i] = gm(fm(static_cast<int>(i)));
        return make_finset_map(fm.dom_ptr(), gm.cod_ptr(), std::move(t));
    }

    bool equal_objects(const Obj& x, const Obj& y) const override {
        return x.finset().size() == y.finset().size();
    }

    bool equal_morphisms(const Mor& f, const Mor& g) const override {
        return equal_objects(f.dom(), g.dom()) && equal_objects(f.cod(), g.cod()) &&
               f.finset().table() == g.finset().table();
    }

    Obj coproduct(const std::vector<Obj>& xs, std::vector<Mor>* injections) const override {
        int total = 0;
        for (const auto& x : xs) total += x.finset().size();
        auto sum = FinSetObj::make(total);
        if (injections) {
            injections->clear();
            int off = 0;
            for (const auto& x : xs) {
                std::vector<int> t(x.finset().size());
                std::iota(t.begin(), t.end(), off);
                injections->push_back(make_finset_map(x.finset_ptr(), sum, std::move(t)));
                off += x.finset().size();
            }
        }
        return Obj(sum);
    }

    Mor coproduct_map(const Obj& coprod, const std::vector<Mor>& legs) const override {
        std::vector<int> t;
        std::shared_ptr<const FinSetObj> cod;
        for (const auto& leg : legs) {
            cod = leg.finset().cod_ptr();
            for (int v : leg.finset().table()) t.push_back(v);
        }
        if (static_cast<int>(t.size()) != coprod.finset().size())
            throw EngineError("coproduct_map: legs do not cover the coproduct");
        if (!cod) cod = FinSetObj::make(0);
        return make_finset_map(coprod.finset_ptr(), cod, std::move(t));
    }

    Mor coequalizer(const Mor& f, const Mor& g) const override {
        const auto& fm = f.finset();
        const auto& gm = g.finset();
        if (fm.dom_ptr()->size() != gm.dom_ptr()->size() || fm.cod_ptr()->size() != gm.cod_ptr()->size())
            throw EngineError("coequalizer: not a parallel pair");
        int n = fm.cod_ptr()->size();
        UnionFind uf(n);
        for (int a = 0; a < fm.dom_ptr()->size(); ++a) uf.unite(fm(a), gm(a));
        // Classes numbered by order of least representative.
        std::vector<int> cls(n, -1);
        int next = 0;
        std::vector<int> proj(n);
        for (int i = 0; i < n; ++i) {
            int r = uf.find(i);
            if (cls[r] < 0) cls[r] = next++;
            proj[i] = cls[r];
        }
        return make_finset_map(fm.cod_ptr(), FinSetObj::make(next), std::move(proj));
    }

    std::optional<Mor> factor_through_epi(const Mor& e, const Mor& h) const override {
        const auto& em = e.finset();
        const auto& hm = h.finset();
        if (em.dom_ptr()->size() != hm.dom_ptr()->size()) throw EngineError("factor: domain mismatch");
        std::vector<int> t(em.cod_ptr()->size(), -1);
        for (int x = 0; x < em.dom_ptr()->size(); ++x) {
            int q = em(x);
            if (t[q] < 0)
                t[q] = hm(x);
            else if (t[q] != hm(x))
                return std::nullopt; // h not constant on a fiber of e
        }
        for (int v : t)
            if (v < 0) return std::nullopt; // e not epi
        return make_finset_map(em.cod_ptr(), hm.cod_ptr(), std::move(t));
    }

    Obj tensor_list(const std::vector<Obj>& xs) const override {
        std::vector<std::shared_ptr<const FinSetObj>> fs;
        for (const auto& x : xs) fs.push_back(x.finset_ptr());
        return Obj(FinSetObj::make_product(std::move(fs)));
    }

    Mor tensor_list_mor(const std::vector<Mor>& fs) const override {
        std::vector<std::shared_ptr<const FinSetObj>> doms, cods;
        for (const auto& f : fs) {
            doms.push_back(f.finset().dom_ptr());
            cods.push_back(f.finset().cod_ptr());
        }
        auto dom = FinSetObj::make_product(doms);
        auto cod = FinSetObj::make_product(cods);
        std::vector<int> t(dom->size());
        for (int ix = 0; ix < dom->size(); ++ix) {
            auto tup = dom->index_to_tuple(ix);
            for (size_t i = 0; i < tup.size(); ++i) tup[i] = fs[i].finset()(tup[i]);
            t[ix] = cod->tuple_to_index(tup);
        }
        return make_finset_map(dom, cod, std::move(t));
    }

    Mor permute_factors(const std::vector<Obj>& xs, const std::vector<int>& perm) const override {
        std::vector<std::shared_ptr<const FinSetObj>> src, dst(xs.size());
        for (const auto& x : xs) src.push_back(x.finset_ptr());
        for (size_t i = 0; i < xs.size(); ++i) dst[perm[i]] = src[i];
        auto dom = FinSetObj::make_product(src);
        auto cod = FinSetObj::make_product(dst);
        std::vector<int> t(dom->size());
        for (int ix = 0; ix < dom->size(); ++ix) {
            auto tup = dom->index_to_tuple(ix);
            std::vector<int> out(tup.size());
            for (size_t i = 0; i < tup.size(); ++i) out[perm[i]] = tup[i];
            t[ix] = cod->tuple_to_index(out);
        }
        return make_finset_map(dom, cod, std::move(t));
    }

    bool is_mono(const Mor& f) const override {
        const auto& t = f.finset().table();
        std::vector<bool> seen(f.finset().cod_ptr()->size(), false);
        for (int v : t) {
            if (seen[v]) return false;
            seen[v] = true;
        }
        return true;
    }

    bool is_epi(const Mor& f) const override {
        std::vector<bool> seen(f.finset().cod_ptr()->size(), false);
        for (int v : f.finset().table()) seen[v] = true;
        return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    }

    std::optional<Mor> find_isomorphism(const Obj& x, const Obj& y) const override {
        if (x.finset().size() != y.finset().size()) return std::nullopt;
        return identity_like(x, y);
    }

    std::optional<Mor> lift_through_mono(const Mor& m, const Mor& h) const override {
        const auto& mm = m.finset();
        std::vector<int> pre(mm.cod_ptr()->size(), -1);
        for (int x = 0; x < mm.dom_ptr()->size(); ++x) {
            if (pre[mm(x)] >= 0) return std::nullopt; // not mono
            pre[mm(x)] = x;
        }
        std::vector<int> t(h.finset().dom_ptr()->size());
        for (size_t i = 0; i < t.size(); ++i) {
            int p = pre[h.finset()(static_cast<int>(i))];
            if (p < 0) return std::nullopt;
            t[i] = p;
        }
        return make_finset_map(h.finset().dom_ptr(), mm.dom_ptr(), std::move(t));
    }

    bool supports_subobjects() const override { return true; }

    Subobject full_subobject(const Obj& x) const override {
        Subobject s;
        s.ambient = x;
        s.indices.resize(1);
        s.indices[0].resize(x.finset().size());
        std::iota(s.indices[0].begin(), s.indices[0].end(), 0);
        return s;
    }

    Subobject image_subobject(const Mor& f) const override {
        Subobject s;
        s.ambient = f.cod();
        s.indices.resize(1);
        std::vector<bool> seen(f.finset().cod_ptr()->size(), false);
        for (int v : f.finset().table()) seen[v] = true;
        for (int i = 0; i < static_cast<int>(seen.size()); ++i)
            if (seen[i]) s.indices[0].push_back(i);
        return s;
    }

    Subobject sub_union(const Subobject& a, const Subobject& b) const override {
        Subobject s;
        s.ambient = a.ambient;
        s.indices.resize(1);
        std::set_union(a.indices[0].begin(), a.indices[0].end(), b.indices[0].begin(), b.indices[0].end(),
                       std::back_inserter(s.indices[0]));
        return s;
    }

    Subobject sub_intersection(const Subobject& a, const Subobject& b) const override {
        Subobject s;
        s.ambient = a.ambient;
        s.indices.resize(1);
        std::set_intersection(a.indices[0].begin(), a.indices[0].end(), b.indices[0].begin(),
                              b.indices[0].end(), std::back_inserter(s.indices[0]));
        return s;
    }

    Mor sub_inclusion(const Subobject& s) const override {
        auto dom = FinSetObj::make(static_cast<int>(s.indices[0].size()));
        return make_finset_map(dom, s.ambient.finset_ptr(), s.indices[0]);
    }

    Mor corestrict(const Mor& f, const Subobject& s) const override {
        std::vector<int> pos(s.ambient.finset().size(), -1);
        for (int i = 0; i < static_cast<int>(s.indices[0].size()); ++i) pos[s.indices[0][i]] = i;
        std::vector<int> t(f.finset().table().size());
        for (size_t i = 0; i < t.size(); ++i) {
            int p = pos[f.finset().table()[i]];
            if (p < 0) throw EngineError("corestrict: image leaves the subobject");
            t[i] = p;
        }
        auto cod = FinSetObj::make(static_cast<int>(s.indices[0].size()));
        return make_finset_map(f.finset().dom_ptr(), cod, std::move(t));
    }

    bool is_cartesian() const override { return true; }

    Mor product_projection(const Obj& prod, int i) const override {
        const auto& p = prod.finset();
        if (!p.is_product()) throw EngineError("product_projection: no product structure");
        std::vector<int> t(p.size());
        for (int ix = 0; ix < p.size(); ++ix) t[ix] = p.index_to_tuple(ix)[i];
        return make_finset_map(prod.finset_ptr(), p.factors()[i], std::move(t));
    }

    Mor pair_into_product(const Obj& prod, const std::vector<Mor>& legs) const override {
        const auto& p = prod.finset();
        if (!p.is_product() || p.factors().size() != legs.size())
            throw EngineError("pair_into_product: arity mismatch");
        int n = legs.empty() ? 1 : legs[0].finset().dom_ptr()->size();
        std::vector<int> t(n);
        for (int x = 0; x < n; ++x) {
            std::vector<int> tup(legs.size());
            for (size_t i = 0; i < legs.size(); ++i) tup[i] = legs[i].finset()(x);
            t[x] = p.tuple_to_index(tup);
        }
        auto dom = legs.empty() ? FinSetObj::make(1) : legs[0].finset().dom_ptr();
        return make_finset_map(dom, prod.finset_ptr(), std::move(t));
    }

private:
    Mor identity_like(const Obj& x, const Obj& y) const {
        std::vector<int> t(x.finset().size());
        std::iota(t.begin(), t.end(), 0);
        return make_finset_map(x.finset_ptr(), y.finset_ptr(), std::move(t));
    }
};

} // namespace

const EngineContract& finset_engine() {
    static FinSetEngine e;
    return e;
}

} // namespace pplab
