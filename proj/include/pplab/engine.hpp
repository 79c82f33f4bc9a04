#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pplab {

class FinSetObj;
class FinSetMap;
class SimplicialSet;
class SimplicialMap;
class ChainComplex;
class ChainMap;

enum class EngineTag { FinSet, SSet, Chain };

std::string engine_name(EngineTag t);

// Engine-erased object. Payloads are immutable and shared.
class Obj {
public:
    Obj() = default;
    explicit Obj(std::shared_ptr<const FinSetObj> p) : v_(std::move(p)) {}
    explicit Obj(std::shared_ptr<const SimplicialSet> p) : v_(std::move(p)) {}
    explicit Obj(std::shared_ptr<const ChainComplex> p) : v_(std::move(p)) {}

    bool empty() const { return std::holds_alternative<std::monostate>(v_); }
    EngineTag tag() const;

    const FinSetObj& finset() const;
    const SimplicialSet& sset() const;
    const ChainComplex& chain() const;

    std::shared_ptr<const FinSetObj> finset_ptr() const;
    std::shared_ptr<const SimplicialSet> sset_ptr() const;
    std::shared_ptr<const ChainComplex> chain_ptr() const;

private:
    std::variant<std::monostate, std::shared_ptr<const FinSetObj>, std::shared_ptr<const SimplicialSet>,
                 std::shared_ptr<const ChainComplex>>
        v_;
};

// Engine-erased morphism; always carries explicit domain and codomain.
class Mor {
public:
    Mor() = default;
    explicit Mor(std::shared_ptr<const FinSetMap> p) : v_(std::move(p)) {}
    explicit Mor(std::shared_ptr<const SimplicialMap> p) : v_(std::move(p)) {}
    explicit Mor(std::shared_ptr<const ChainMap> p) : v_(std::move(p)) {}

    bool empty() const { return std::holds_alternative<std::monostate>(v_); }
    EngineTag tag() const;

    Obj dom() const;
    Obj cod() const;

    const FinSetMap& finset() const;
    const SimplicialMap& sset() const;
    const ChainMap& chain() const;

private:
    std::variant<std::monostate, std::shared_ptr<const FinSetMap>, std::shared_ptr<const SimplicialMap>,
                 std::shared_ptr<const ChainMap>>
        v_;
};

// Subobject of an ambient object: a subset of elements (finset) or a
// face-closed set of cells (sset), used to realize colimits of monos exactly.
struct Subobject {
    Obj ambient;
    // indices[k] = sorted element ids (finset: k == 0 only; sset: per dimension).
    std::vector<std::vector<int>> indices;

    bool operator==(const Subobject&) const = default;
};

struct EngineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A symmetric monoidal finitely-cocomplete category with decidable morphism
// equality. All finite colimits reduce to coproduct + coequalizer.
class EngineContract {
public:
    virtual ~EngineContract() = default;
    virtual EngineTag tag() const = 0;

    virtual Obj initial() const = 0;
    virtual Obj unit() const = 0;
    virtual Mor identity(const Obj& x) const = 0;
    virtual Mor compose(const Mor& g, const Mor& f) const = 0; // g after f
    virtual bool equal_objects(const Obj& x, const Obj& y) const = 0;
    virtual bool equal_morphisms(const Mor& f, const Mor& g) const = 0;

    virtual Obj coproduct(const std::vector<Obj>& xs, std::vector<Mor>* injections) const = 0;
    // Universal map out of a coproduct built by this engine, with the given legs.
    virtual Mor coproduct_map(const Obj& coprod, const std::vector<Mor>& legs) const = 0;
    // Coequalizer of the parallel pair f, g : A -> B; returns projection B -> Q.
    virtual Mor coequalizer(const Mor& f, const Mor& g) const = 0;
    // Factor h through the (regular) epi e: unique m with m o e = h, if any.
    virtual std::optional<Mor> factor_through_epi(const Mor& e, const Mor& h) const = 0;

    virtual Obj tensor_list(const std::vector<Obj>& xs) const = 0;
    virtual Mor tensor_list_mor(const std::vector<Mor>& fs) const = 0;
    // Canonical iso tensor(xs) -> tensor(xs permuted): factor i goes to slot perm[i].
    virtual Mor permute_factors(const std::vector<Obj>& xs, const std::vector<int>& perm) const = 0;

    virtual bool is_mono(const Mor& f) const = 0;
    virtual bool is_epi(const Mor& f) const = 0;
    virtual std::optional<Mor> find_isomorphism(const Obj& x, const Obj& y) const = 0;
    // Unique x with m o x = h for a mono m, when h factors through m.
    virtual std::optional<Mor> lift_through_mono(const Mor& m, const Mor& h) const = 0;

    // --- Subobject support (finset, sset). Chain engine has none. ---
    virtual bool supports_subobjects() const { return false; }
    virtual Subobject full_subobject(const Obj&) const { throw EngineError("subobjects unsupported"); }
    virtual Subobject image_subobject(const Mor&) const { throw EngineError("subobjects unsupported"); }
    virtual Subobject sub_union(const Subobject&, const Subobject&) const {
        throw EngineError("subobjects unsupported");
    }
    virtual Subobject sub_intersection(const Subobject&, const Subobject&) const {
        throw EngineError("subobjects unsupported");
    }
    virtual Mor sub_inclusion(const Subobject&) const { throw EngineError("subobjects unsupported"); }
    // Corestrict f (into the ambient of s) to the subobject s; image must lie in s.
    virtual Mor corestrict(const Mor&, const Subobject&) const { throw EngineError("subobjects unsupported"); }

    // --- Cartesian structure (finset, sset): projections and pairing. ---
    virtual bool is_cartesian() const { return false; }
    virtual Mor product_projection(const Obj&, int) const { throw EngineError("not cartesian"); }
    virtual Mor pair_into_product(const Obj&, const std::vector<Mor>&) const {
        throw EngineError("not cartesian");
    }

    // Derived operations (shared implementations in engine.cpp).
    Mor tensor_mor(const Mor& f, const Mor& g) const;
    Obj tensor(const Obj& x, const Obj& y) const;
    Mor symmetry(const Obj& x, const Obj& y) const;
    bool is_isomorphism(const Mor& f) const;

    struct Pushout {
        Obj obj;
        Mor from_left;  // X -> P
        Mor from_right; // Y -> P
        Mor projection; // X+Y -> P (the coequalizer projection)
    };
    // Pushout of the span X <-f- A -g-> Y as coeq(A => X+Y).
    Pushout pushout(const Mor& f, const Mor& g) const;
    // Universal map out of a pushout: the unique u with u o from_left = p,
    // u o from_right = q (when the cocone commutes).
    std::optional<Mor> pushout_universal(const Pushout& po, const Mor& p, const Mor& q) const;
};

const EngineContract& finset_engine();
const EngineContract& sset_engine();
const EngineContract& chain_engine();
const EngineContract& engine_for(EngineTag t);

} // namespace pplab
