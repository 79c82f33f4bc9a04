#include "pplab/pushout_product.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace pplab {

void ArrowSquare::validate() const {
    const auto& e = engine_for(src.tag());
    if (!e.equal_morphisms(e.compose(dst, top), e.compose(bottom, src)))
        throw EngineError("arrow square does not commute");
}

bool is_cocartesian(const ArrowSquare& s) {
    const auto& e = engine_for(s.src.tag());
    auto po = e.pushout(s.src, s.top);
    auto u = e.pushout_universal(po, s.bottom, s.dst);
    return u && e.is_isomorphism(*u);
}

MultiIndex::MultiIndex(std::vector<int> p) : parts(std::move(p)) {
    if (parts.empty()) throw EngineError("multi-index: length must be >= 1");
    int t = 0;
    for (int v : parts) {
        if (v < 0) throw EngineError("multi-index: negative entry");
        t += v;
    }
    if (t == 0) throw EngineError("multi-index: all-zero rejected");
}

int MultiIndex::total() const {
    int t = 0;
    for (int v : parts) t += v;
    return t;
}

bool MultiIndex::leq(const MultiIndex& o) const {
    if (parts.size() != o.parts.size()) return false;
    for (size_t i = 0; i < parts.size(); ++i)
        if (parts[i] > o.parts[i]) return false;
    return true;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < parts.size(); ++i) os << parts[i] << (i + 1 < parts.size() ? "," : "");
    os << ")";
    return os.str();
}

std::vector<MultiIndex> MultiIndex::sub_indices() const {
    std::vector<std::vector<int>> all{{}};
    for (int p : parts) {
        std::vector<std::vector<int>> next;
        for (const auto& prefix : all)
            for (int v = 0; v <= p; ++v) {
                auto t = prefix;
                t.push_back(v);
                next.push_back(std::move(t));
            }
        all = std::move(next);
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        int sa = std::accumulate(a.begin(), a.end(), 0);
        int sb = std::accumulate(b.begin(), b.end(), 0);
        return sa != sb ? sa < sb : a < b;
    });
    std::vector<MultiIndex> out;
    for (auto& v : all) out.push_back(MultiIndex::unchecked(std::move(v)));
    return out;
}

EquivariantArrow::EquivariantArrow(Mor arrow_, GroupAction dom, GroupAction cod)
    : arrow(std::move(arrow_)), dom_action(std::move(dom)), cod_action(std::move(cod)) {
    const auto& e = engine_for(arrow.tag());
    if (dom_action.group()->order() != cod_action.group()->order())
        throw EngineError("equivariant arrow: group mismatch");
    for (int g = 0; g < dom_action.group()->order(); ++g)
        if (!e.equal_morphisms(e.compose(cod_action.action(g), arrow),
                               e.compose(arrow, dom_action.action(g))))
            throw EngineError("equivariant arrow: arrow is not equivariant");
}

EquivariantArrow EquivariantArrow::with_trivial_action(FinGroupPtr g, const Mor& arrow) {
    return EquivariantArrow(arrow, GroupAction::trivial(g, arrow.dom()),
                            GroupAction::trivial(g, arrow.cod()));
}

namespace {

std::vector<std::vector<int>> punctured_cube_vertices(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> eps(n, 0);
    for (;;) {
        bool all_one = std::all_of(eps.begin(), eps.end(), [](int b) { return b == 1; });
        if (!all_one) out.push_back(eps);
        int i = n - 1;
        while (i >= 0 && eps[i] == 1) eps[i--] = 0;
        if (i < 0) break;
        eps[i] = 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Obj vertex_label(const EngineContract& e, const std::vector<Mor>& fs, const std::vector<int>& eps) {
    std::vector<Obj> objs;
    for (size_t i = 0; i < fs.size(); ++i) objs.push_back(eps[i] == 0 ? fs[i].dom() : fs[i].cod());
    return e.tensor_list(objs);
}

Mor vertex_to_ambient(const EngineContract& e, const std::vector<Mor>& fs, const std::vector<int>& eps) {
    std::vector<Mor> maps;
    for (size_t i = 0; i < fs.size(); ++i)
        maps.push_back(eps[i] == 0 ? fs[i] : e.identity(fs[i].cod()));
    return e.tensor_list_mor(maps);
}

} // namespace

PPResult pp_family(const std::vector<Mor>& fs) {
    if (fs.empty()) throw EngineError("pp_family: empty family");
    EngineTag tag = fs[0].tag();
    for (const auto& f : fs)
        if (f.tag() != tag) throw EngineError("pp: engine mismatch");
    const auto& e = engine_for(tag);
    int n = static_cast<int>(fs.size());

    PPResult r;
    r.factors = fs;
    r.vertices = punctured_cube_vertices(n);

    bool mono = e.supports_subobjects();
    for (const auto& f : fs) mono = mono && e.is_mono(f);
    r.mono_mode = mono;

    std::vector<Obj> cods;
    for (const auto& f : fs) cods.push_back(f.cod());
    Obj ambient = e.tensor_list(cods);

    if (mono) {
        Subobject u;
        for (int i = 0; i < n; ++i) {
            std::vector<Mor> maps;
            for (int j = 0; j < n; ++j) maps.push_back(j == i ? fs[j] : e.identity(cods[j]));
            Subobject im = e.image_subobject(e.tensor_list_mor(maps));
            u = (i == 0) ? im : e.sub_union(u, im);
        }
        r.domain_subobject = u;
        r.arrow = e.sub_inclusion(u);
        for (const auto& eps : r.vertices)
            r.cocone.push_back(e.corestrict(vertex_to_ambient(e, fs, eps), u));
    } else {
        // Abstract punctured-cube colimit.
        int m = static_cast<int>(r.vertices.size());
        std::map<std::vector<int>, int> vidx;
        for (int v = 0; v < m; ++v) vidx[r.vertices[v]] = v;
        std::vector<Obj> labels;
        for (const auto& eps : r.vertices) labels.push_back(vertex_label(e, fs, eps));
        std::vector<std::pair<int, int>> order;
        std::map<std::pair<int, int>, Mor> cover_maps;
        for (int v = 0; v < m; ++v)
            for (int w = 0; w < m; ++w) {
                bool le = true;
                int flips = 0, flip_at = -1;
                for (int i = 0; i < n; ++i) {
                    if (r.vertices[v][i] > r.vertices[w][i]) le = false;
                    if (r.vertices[v][i] != r.vertices[w][i]) {
                        ++flips;
                        flip_at = i;
                    }
                }
                if (!le || v == w) continue;
                order.emplace_back(v, w);
                if (flips == 1) {
                    std::vector<Mor> maps;
                    for (int i = 0; i < n; ++i) {
                        if (i == flip_at)
                            maps.push_back(fs[i]);
                        else
                            maps.push_back(e.identity(r.vertices[v][i] == 0 ? fs[i].dom() : fs[i].cod()));
                    }
                    cover_maps[{v, w}] = e.tensor_list_mor(maps);
                }
            }
        DiagramOnPoset d(m, order, labels, cover_maps);
        PosetColimit col = poset_colimit(d, e);
        r.cocone = col.cocone;
        std::vector<Mor> legs;
        for (const auto& eps : r.vertices) legs.push_back(vertex_to_ambient(e, fs, eps));
        auto u = colimit_universal(d, col, legs, e);
        if (!u) throw EngineError("pp: cube cocone does not factor");
        r.arrow = *u;
    }
    return r;
}

PPResult pp(const Mor& f, const Mor& g) { return pp_family({f, g}); }

Mor pp_binary_via_pushout(const Mor& f, const Mor& g) {
    const auto& e = engine_for(f.tag());
    Mor left = e.tensor_mor(e.identity(f.dom()), g);  // X1 x X2 -> X1 x Y2
    Mor right = e.tensor_mor(f, e.identity(g.dom())); // X1 x X2 -> Y1 x X2
    auto po = e.pushout(left, right);
    Mor to_cod_l = e.tensor_mor(f, e.identity(g.cod()));
    Mor to_cod_r = e.tensor_mor(e.identity(f.cod()), g);
    auto u = e.pushout_universal(po, to_cod_l, to_cod_r);
    if (!u) throw EngineError("pp: displayed pushout does not factor");
    return *u;
}

// Unique map out of the pp domain determined by legs on the cube vertices.
static Mor factor_via_cube(const EngineContract& e, const PPResult& a, const std::vector<Mor>& legs) {
    std::vector<Obj> labels;
    for (const auto& c : a.cocone) labels.push_back(c.dom());
    std::vector<Mor> inj;
    Obj sum = e.coproduct(labels, &inj);
    Mor bundle = e.coproduct_map(sum, a.cocone);
    Mor h = e.coproduct_map(sum, legs);
    auto m = e.factor_through_epi(bundle, h);
    if (!m) throw EngineError("pp: induced map does not factor through the cube");
    return *m;
}

namespace {

// Sym-group action on a pp power: g sends vertex eps to eps', where the slot
// perm[i] of eps' reads eps[i], together with the factor permutation map.
GroupAction power_domain_action(const EngineContract& e, const PPResult& r, const FinGroupPtr& group) {
    int n = static_cast<int>(r.factors.size());
    std::map<std::vector<int>, int> vidx;
    for (int v = 0; v < static_cast<int>(r.vertices.size()); ++v) vidx[r.vertices[v]] = v;

    std::vector<Mor> maps;
    for (int g = 0; g < group->order(); ++g) {
        const Perm& p = group->perm(g);
        std::vector<Mor> legs;
        for (int v = 0; v < static_cast<int>(r.vertices.size()); ++v) {
            const auto& eps = r.vertices[v];
            std::vector<int> target(n);
            std::vector<Obj> objs(n);
            for (int i = 0; i < n; ++i) {
                target[p[i]] = eps[i];
                objs[i] = eps[i] == 0 ? r.factors[i].dom() : r.factors[i].cod();
            }
            Mor sigma = e.permute_factors(objs, p);
            legs.push_back(e.compose(r.cocone[vidx.at(target)], sigma));
        }
        maps.push_back(factor_via_cube(e, r, legs));
    }
    return GroupAction(group, r.arrow.dom(), std::move(maps));
}

} // namespace

PPResult pp_multi(const std::vector<Mor>& family, const MultiIndex& n) {
    if (family.size() != n.parts.size()) throw EngineError("pp_multi: family/index length mismatch");
    std::vector<Mor> expanded;
    for (size_t i = 0; i < family.size(); ++i)
        for (int c = 0; c < n.parts[i]; ++c) expanded.push_back(family[i]);
    if (expanded.empty()) throw EngineError("pp_multi: zero total power");
    const auto& e = engine_for(expanded[0].tag());

    PPResult r = pp_family(expanded);
    auto group = FinGroup::symmetric_multi(n.parts);

    std::vector<Obj> cods;
    for (const auto& f : expanded) cods.push_back(f.cod());
    std::vector<Mor> cod_maps;
    for (int g = 0; g < group->order(); ++g) cod_maps.push_back(e.permute_factors(cods, group->perm(g)));
    GroupAction cod_action(group, r.arrow.cod(), std::move(cod_maps));
    GroupAction dom_action = power_domain_action(e, r, group);
    r.equivariant = EquivariantArrow(r.arrow, std::move(dom_action), std::move(cod_action));
    return r;
}

PPResult pp_power(const Mor& f, int n) {
    if (n < 1) throw EngineError("pp_power: n = 0 rejected");
    return pp_multi({f}, MultiIndex::single(n));
}

ArrowSquare pp_functorial_map(const PPResult& a, const PPResult& b,
                              const std::vector<ArrowSquare>& components) {
    const auto& e = engine_for(a.arrow.tag());
    int n = static_cast<int>(a.factors.size());
    if (static_cast<int>(components.size()) != n) throw EngineError("pp_functorial_map: arity mismatch");

    std::vector<Mor> bottoms;
    for (const auto& c : components) bottoms.push_back(c.bottom);
    Mor cod_map = e.tensor_list_mor(bottoms);

    std::map<std::vector<int>, int> bidx;
    for (int v = 0; v < static_cast<int>(b.vertices.size()); ++v) bidx[b.vertices[v]] = v;
    std::vector<Mor> legs;
    for (int v = 0; v < static_cast<int>(a.vertices.size()); ++v) {
        const auto& eps = a.vertices[v];
        std::vector<Mor> maps;
        for (int i = 0; i < n; ++i) maps.push_back(eps[i] == 0 ? components[i].top : components[i].bottom);
        legs.push_back(e.compose(b.cocone[bidx.at(eps)], e.tensor_list_mor(maps)));
    }
    Mor dom_map = factor_via_cube(e, a, legs);
    ArrowSquare sq{a.arrow, b.arrow, dom_map, cod_map};
    sq.validate();
    return sq;
}

ArrowSquare pp_symmetry_comparison(const Mor& f, const Mor& g) {
    const auto& e = engine_for(f.tag());
    PPResult a = pp(f, g);
    PPResult b = pp(g, f);
    Mor cod_map = e.symmetry(f.cod(), g.cod());

    std::map<std::vector<int>, int> bidx;
    for (int v = 0; v < static_cast<int>(b.vertices.size()); ++v) bidx[b.vertices[v]] = v;
    std::vector<Mor> legs;
    for (int v = 0; v < static_cast<int>(a.vertices.size()); ++v) {
        const auto& eps = a.vertices[v];
        std::vector<int> swapped{eps[1], eps[0]};
        std::vector<Obj> objs{eps[0] == 0 ? f.dom() : f.cod(), eps[1] == 0 ? g.dom() : g.cod()};
        Mor sigma = e.permute_factors(objs, {1, 0});
        legs.push_back(e.compose(b.cocone[bidx.at(swapped)], sigma));
    }
    Mor dom_map = factor_via_cube(e, a, legs);
    ArrowSquare sq{a.arrow, b.arrow, dom_map, cod_map};
    sq.validate();
    return sq;
}

bool is_arrow_cofibration(const ArrowSquare& s) {
    const auto& e = engine_for(s.src.tag());
    if (!e.is_mono(s.top)) return false;
    auto po = e.pushout(s.src, s.top);
    auto u = e.pushout_universal(po, s.bottom, s.dst);
    return u && e.is_mono(*u);
}

CoinvPP arrow_coinvariants(const EquivariantArrow& a) {
    const auto& e = engine_for(a.arrow.tag());
    Coinvariants dq = coinvariants(a.dom_action);
    Coinvariants cq = coinvariants(a.cod_action);
    auto induced = e.factor_through_epi(dq.projection, e.compose(cq.projection, a.arrow));
    if (!induced) throw EngineError("coinvariants: arrow does not descend");
    return CoinvPP{*induced, a, dq, cq};
}

namespace {

bool same_group(const FinGroupPtr& a, const FinGroupPtr& b) {
    if (a->order() != b->order()) return false;
    for (int g = 0; g < a->order(); ++g)
        for (int h = 0; h < a->order(); ++h)
            if (a->mult(g, h) != b->mult(g, h)) return false;
    return true;
}

} // namespace

CoinvPP coinv_pp(const EquivariantArrow& y, const std::vector<Mor>& family, const MultiIndex& n) {
    const auto& e = engine_for(y.arrow.tag());
    PPResult power = pp_multi(family, n);
    if (!power.equivariant) throw EngineError("coinv_pp: power has no action");
    if (!same_group(y.group(), power.equivariant->group()))
        throw EngineError("coinv_pp: y's group is not the power's symmetric group");

    PPResult q = pp_family({y.arrow, power.arrow});
    auto group = y.group();

    std::vector<Mor> cod_maps;
    for (int g = 0; g < group->order(); ++g)
        cod_maps.push_back(e.tensor_list_mor(
            {y.cod_action.action(g), power.equivariant->cod_action.action(g)}));
    GroupAction cod_action(group, q.arrow.cod(), std::move(cod_maps));

    std::map<std::vector<int>, int> vidx;
    for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) vidx[q.vertices[v]] = v;
    std::vector<Mor> dom_maps;
    for (int g = 0; g < group->order(); ++g) {
        std::vector<Mor> legs;
        for (int v = 0; v < static_cast<int>(q.vertices.size()); ++v) {
            const auto& eps = q.vertices[v];
            Mor ya = eps[0] == 0 ? y.dom_action.action(g) : y.cod_action.action(g);
            Mor ta = eps[1] == 0 ? power.equivariant->dom_action.action(g)
                                 : power.equivariant->cod_action.action(g);
            legs.push_back(e.compose(q.cocone[v], e.tensor_list_mor({ya, ta})));
        }
        dom_maps.push_back(factor_via_cube(e, q, legs));
    }
    GroupAction dom_action(group, q.arrow.dom(), std::move(dom_maps));
    EquivariantArrow total(q.arrow, std::move(dom_action), std::move(cod_action));
    return arrow_coinvariants(total);
}

CoinvPP tensor_coinv(const GroupAction& y_action, const std::vector<Mor>& family, const MultiIndex& n) {
    const auto& e = engine_for(y_action.object().tag());
    PPResult power = pp_multi(family, n);
    if (!same_group(y_action.group(), power.equivariant->group()))
        throw EngineError("tensor_coinv: group mismatch");
    auto group = y_action.group();

    Mor arrow = e.tensor_list_mor({e.identity(y_action.object()), power.arrow});
    std::vector<Mor> dom_maps, cod_maps;
    for (int g = 0; g < group->order(); ++g) {
        dom_maps.push_back(e.tensor_list_mor(
            {y_action.action(g), power.equivariant->dom_action.action(g)}));
        cod_maps.push_back(e.tensor_list_mor(
            {y_action.action(g), power.equivariant->cod_action.action(g)}));
    }
    EquivariantArrow total(arrow, GroupAction(group, arrow.dom(), std::move(dom_maps)),
                           GroupAction(group, arrow.cod(), std::move(cod_maps)));
    return arrow_coinvariants(total);
}

std::optional<ArrowSquare> find_arrow_isomorphism(const Mor& a, const Mor& b) {
    if (a.tag() != b.tag()) return std::nullopt;
    const auto& e = engine_for(a.tag());

    if (a.tag() == EngineTag::Chain) {
        // Best effort: a codomain iso that happens to respect the arrows.
        auto phi_cod = e.find_isomorphism(a.cod(), b.cod());
        if (!phi_cod) return std::nullopt;
        auto phi_dom = e.lift_through_mono(b, e.compose(*phi_cod, a));
        if (!phi_dom || !e.is_isomorphism(*phi_dom)) return std::nullopt;
        ArrowSquare sq{a, b, *phi_dom, *phi_cod};
        sq.validate();
        return sq;
    }

    if (!e.is_mono(a) || !e.is_mono(b)) return std::nullopt;

    std::optional<Mor> phi_cod;
    if (a.tag() == EngineTag::FinSet) {
        // Any bijection matching image to image.
        Subobject ia = e.image_subobject(a), ib = e.image_subobject(b);
        if (a.cod().finset().size() != b.cod().finset().size()) return std::nullopt;
        if (ia.indices[0].size() != ib.indices[0].size()) return std::nullopt;
        std::vector<int> t(a.cod().finset().size(), -1);
        for (size_t i = 0; i < ia.indices[0].size(); ++i) t[ia.indices[0][i]] = ib.indices[0][i];
        std::vector<int> rest_b;
        std::vector<bool> used(t.size(), false);
        for (int v : ib.indices[0]) used[v] = true;
        for (int v = 0; v < static_cast<int>(t.size()); ++v)
            if (!used[v]) rest_b.push_back(v);
        size_t next = 0;
        for (int v = 0; v < static_cast<int>(t.size()); ++v)
            if (t[v] < 0) t[v] = rest_b[next++];
        phi_cod = make_finset_map(a.cod().finset_ptr(), b.cod().finset_ptr(), std::move(t));
    } else {
        Subobject ia = e.image_subobject(a), ib = e.image_subobject(b);
        auto in_sub = [](const Subobject& s, int k, int c) {
            if (k >= static_cast<int>(s.indices.size())) return false;
            return std::binary_search(s.indices[k].begin(), s.indices[k].end(), c);
        };
        phi_cod = sset_find_isomorphism_constrained(
            a.cod().sset_ptr(), b.cod().sset_ptr(),
            [&](int k, int cx, int cy) { return in_sub(ia, k, cx) == in_sub(ib, k, cy); });
    }
    if (!phi_cod) return std::nullopt;
    auto phi_dom = e.lift_through_mono(b, e.compose(*phi_cod, a));
    if (!phi_dom || !e.is_isomorphism(*phi_dom)) return std::nullopt;
    ArrowSquare sq{a, b, *phi_dom, *phi_cod};
    sq.validate();
    return sq;
}

Obj discrete_obj(const Obj& finset_obj) { return Obj(SimplicialSet::discrete(finset_obj.finset().size())); }

Mor discrete_map(const Mor& finset_map) {
    const auto& fm = finset_map.finset();
    auto dom = SimplicialSet::discrete(fm.dom_ptr()->size());
    auto cod = SimplicialSet::discrete(fm.cod_ptr()->size());
    std::vector<std::vector<FormalSimplex>> images(1);
    for (int v : fm.table()) images[0].push_back(FormalSimplex{{}, CellRef{0, v}});
    if (fm.dom_ptr()->size() == 0) images.clear();
    return make_sset_map(dom, cod, std::move(images));
}

} // namespace pplab
