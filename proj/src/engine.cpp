#include "pplab/engine.hpp"

#include "pplab/chain.hpp"
#include "pplab/finset.hpp"
#include "pplab/simplicial.hpp"

namespace pplab {

std::string engine_name(EngineTag t) {
    switch (t) {
        case EngineTag::FinSet: return "finset";
        case EngineTag::SSet: return "sset";
        case EngineTag::Chain: return "chain";
    }
    return "?";
}

EngineTag Obj::tag() const {
    if (std::holds_alternative<std::shared_ptr<const FinSetObj>>(v_)) return EngineTag::FinSet;
    if (std::holds_alternative<std::shared_ptr<const SimplicialSet>>(v_)) return EngineTag::SSet;
    if (std::holds_alternative<std::shared_ptr<const ChainComplex>>(v_)) return EngineTag::Chain;
    throw EngineError("empty Obj");
}

const FinSetObj& Obj::finset() const { return *finset_ptr(); }
const SimplicialSet& Obj::sset() const { return *sset_ptr(); }
const ChainComplex& Obj::chain() const { return *chain_ptr(); }

std::shared_ptr<const FinSetObj> Obj::finset_ptr() const {
    if (auto* p = std::get_if<std::shared_ptr<const FinSetObj>>(&v_)) return *p;
    throw EngineError("Obj is not a finset object");
}
std::shared_ptr<const SimplicialSet> Obj::sset_ptr() const {
    if (auto* p = std::get_if<std::shared_ptr<const SimplicialSet>>(&v_)) return *p;
    throw EngineError("Obj is not a simplicial set");
}
std::shared_ptr<const ChainComplex> Obj::chain_ptr() const {
    if (auto* p = std::get_if<std::shared_ptr<const ChainComplex>>(&v_)) return *p;
    throw EngineError("Obj is not a chain complex");
}

EngineTag Mor::tag() const {
    if (std::holds_alternative<std::shared_ptr<const FinSetMap>>(v_)) return EngineTag::FinSet;
    if (std::holds_alternative<std::shared_ptr<const SimplicialMap>>(v_)) return EngineTag::SSet;
    if (std::holds_alternative<std::shared_ptr<const ChainMap>>(v_)) return EngineTag::Chain;
    throw EngineError("empty Mor");
}

const FinSetMap& Mor::finset() const {
    if (auto* p = std::get_if<std::shared_ptr<const FinSetMap>>(&v_)) return **p;
    throw EngineError("Mor is not a finset map");
}
const SimplicialMap& Mor::sset() const {
    if (auto* p = std::get_if<std::shared_ptr<const SimplicialMap>>(&v_)) return **p;
    throw EngineError("Mor is not a simplicial map");
}
const ChainMap& Mor::chain() const {
    if (auto* p = std::get_if<std::shared_ptr<const ChainMap>>(&v_)) return **p;
    throw EngineError("Mor is not a chain map");
}

Obj Mor::dom() const {
    switch (tag()) {
        case EngineTag::FinSet: return Obj(finset().dom_ptr());
        case EngineTag::SSet: return Obj(sset().dom_ptr());
        case EngineTag::Chain: return Obj(chain().dom_ptr());
    }
    throw EngineError("empty Mor");
}

Obj Mor::cod() const {
    switch (tag()) {
        case EngineTag::FinSet: return Obj(finset().cod_ptr());
        case EngineTag::SSet: return Obj(sset().cod_ptr());
        case EngineTag::Chain: return Obj(chain().cod_ptr());
    }
    throw EngineError("empty Mor");
}

Mor EngineContract::tensor_mor(const Mor& f, const Mor& g) const { return tensor_list_mor({f, g}); }

Obj EngineContract::tensor(const Obj& x, const Obj& y) const { return tensor_list({x, y}); }

Mor EngineContract::symmetry(const Obj& x, const Obj& y) const { return permute_factors({x, y}, {1, 0}); }

bool EngineContract::is_isomorphism(const Mor& f) const { return is_mono(f) && is_epi(f); }

EngineContract::Pushout EngineContract::pushout(const Mor& f, const Mor& g) const {
    if (!equal_objects(f.dom(), g.dom())) throw EngineError("pushout: span feet differ");
    std::vector<Mor> inj;
    Obj xy = coproduct({f.cod(), g.cod()}, &inj);
    Mor u = compose(inj[0], f);
    Mor v = compose(inj[1], g);
    Mor q = coequalizer(u, v);
    Pushout po;
    po.obj = q.cod();
    po.projection = q;
    po.from_left = compose(q, inj[0]);
    po.from_right = compose(q, inj[1]);
    return po;
}

std::optional<Mor> EngineContract::pushout_universal(const Pushout& po, const Mor& p, const Mor& q) const {
    std::vector<Mor> inj;
    // Rebuild the coproduct legs: dom(projection) is the coproduct object.
    Obj xy = po.projection.dom();
    Mor h = coproduct_map(xy, {p, q});
    return factor_through_epi(po.projection, h);
}

const EngineContract& engine_for(EngineTag t) {
    switch (t) {
        case EngineTag::FinSet: return finset_engine();
        case EngineTag::SSet: return sset_engine();
        case EngineTag::Chain: return chain_engine();
    }
    throw EngineError("unknown engine");
}

} // namespace pplab
