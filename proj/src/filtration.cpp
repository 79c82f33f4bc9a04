#include "pplab/filtration.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace pplab {

DCPoset::DCPoset(MultiIndex n, std::vector<Tuple> tuples) : n_(std::move(n)), tuples_(std::move(tuples)) {
    std::sort(tuples_.begin(), tuples_.end());
    tuples_.erase(std::unique(tuples_.begin(), tuples_.end()), tuples_.end());
    int N = n_.total();
    for (const auto& t : tuples_) {
        if (static_cast<int>(t.size()) != N) throw EngineError("dcposet: tuple length mismatch");
        for (int c = 0; c < N; ++c) {
            if (t[c] > 2) throw EngineError("dcposet: entry out of {0,1,2}");
            if (t[c] > 0) {
                Tuple down = t;
                --down[c];
                if (!std::binary_search(tuples_.begin(), tuples_.end(), down))
                    throw EngineError("dcposet: not downward closed");
            }
        }
    }
}

bool DCPoset::contains(const Tuple& t) const {
    return std::binary_search(tuples_.begin(), tuples_.end(), t);
}

DCPoset DCPoset::full(const MultiIndex& n) {
    int N = n.total();
    std::vector<Tuple> out;
    Tuple t(N, 0);
    for (;;) {
        out.push_back(t);
        int i = N - 1;
        while (i >= 0 && t[i] == 2) t[i--] = 0;
        if (i < 0) break;
        ++t[i];
    }
    return DCPoset(n, std::move(out));
}

DCPoset DCPoset::downward_closure(const MultiIndex& n, const std::vector<Tuple>& generators) {
    std::set<Tuple> seen(generators.begin(), generators.end());
    std::vector<Tuple> frontier(generators);
    while (!frontier.empty()) {
        Tuple t = frontier.back();
        frontier.pop_back();
        for (size_t c = 0; c < t.size(); ++c)
            if (t[c] > 0) {
                Tuple d = t;
                --d[c];
                if (seen.insert(d).second) frontier.push_back(d);
            }
    }
    return DCPoset(n, std::vector<Tuple>(seen.begin(), seen.end()));
}

std::vector<Tuple> DCPoset::maximal_tuples() const {
    std::vector<Tuple> out;
    for (const auto& t : tuples_) {
        bool maximal = true;
        for (size_t c = 0; c < t.size() && maximal; ++c)
            if (t[c] < 2) {
                Tuple up = t;
                ++up[c];
                if (contains(up)) maximal = false;
            }
        if (maximal) out.push_back(t);
    }
    return out;
}

bool DCPoset::closed_under_block_permutations() const {
    auto group = FinGroup::symmetric_multi(n_.parts);
    for (int g = 0; g < group->order(); ++g) {
        const Perm& p = group->perm(g);
        for (const auto& t : tuples_) {
            Tuple s(t.size());
            for (size_t c = 0; c < t.size(); ++c) s[p[c]] = t[c];
            if (!contains(s)) return false;
        }
    }
    return true;
}

std::vector<Tuple> orbit_cells(const MultiIndex& n, const MultiIndex& k) {
    if (!k.leq(n)) throw EngineError("orbit: k exceeds n");
    // Per block: choose positions of the 2's; others are 1's.
    std::vector<std::vector<Tuple>> blocks;
    for (size_t i = 0; i < n.parts.size(); ++i) {
        std::vector<Tuple> bs;
        int ni = n.parts[i], ki = k.parts[i];
        std::vector<int> pick(ki);
        if (ki == 0) {
            bs.push_back(Tuple(ni, 1));
        } else {
            for (int t = 0; t < ki; ++t) pick[t] = t;
            for (;;) {
                Tuple b(ni, 1);
                for (int t : pick) b[t] = 2;
                bs.push_back(b);
                int i2 = ki - 1;
                while (i2 >= 0 && pick[i2] == ni - ki + i2) --i2;
                if (i2 < 0) break;
                ++pick[i2];
                for (int j = i2 + 1; j < ki; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
        blocks.push_back(std::move(bs));
    }
    std::vector<Tuple> out{{}};
    for (const auto& bs : blocks) {
        std::vector<Tuple> next;
        for (const auto& prefix : out)
            for (const auto& b : bs) {
                Tuple t = prefix;
                t.insert(t.end(), b.begin(), b.end());
                next.push_back(std::move(t));
            }
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<Mor> coordinate_maps(const std::vector<Mor>& v0, const std::vector<Mor>& v1,
                                 const MultiIndex& n, const Tuple& t) {
    const auto& e = engine_for(v0[0].tag());
    std::vector<Mor> maps;
    int c = 0;
    for (size_t i = 0; i < n.parts.size(); ++i)
        for (int j = 0; j < n.parts[i]; ++j, ++c) {
            switch (t[c]) {
                case 0: maps.push_back(e.compose(v1[i], v0[i])); break;
                case 1: maps.push_back(v1[i]); break;
                default: maps.push_back(e.identity(v1[i].cod())); break;
            }
        }
    return maps;
}

Obj ambient_power(const std::vector<Mor>& v1, const MultiIndex& n) {
    const auto& e = engine_for(v1[0].tag());
    std::vector<Obj> objs;
    for (size_t i = 0; i < n.parts.size(); ++i)
        for (int j = 0; j < n.parts[i]; ++j) objs.push_back(v1[i].cod());
    return e.tensor_list(objs);
}

} // namespace

Mor tuple_label_map(const std::vector<Mor>& v0, const std::vector<Mor>& v1, const MultiIndex& n,
                    const Tuple& t) {
    const auto& e = engine_for(v0[0].tag());
    return e.tensor_list_mor(coordinate_maps(v0, v1, n, t));
}

QColimit q_colimit(const DCPoset& c, const std::vector<Mor>& v0, const std::vector<Mor>& v1) {
    const auto& e = engine_for(v0[0].tag());
    const auto& ts = c.tuples();
    int m = static_cast<int>(ts.size());
    if (m == 0) return QColimit{e.initial(), {}};
    std::map<Tuple, int> idx;
    for (int i = 0; i < m; ++i) idx[ts[i]] = i;

    std::vector<Obj> labels;
    for (const auto& t : ts) {
        std::vector<Obj> objs;
        for (const auto& f : coordinate_maps(v0, v1, c.n(), t)) objs.push_back(f.dom());
        labels.push_back(e.tensor_list(objs));
    }
    std::vector<std::pair<int, int>> order;
    std::map<std::pair<int, int>, Mor> cover_maps;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            if (a == b) continue;
            bool le = true;
            int bumps = 0, at = -1;
            for (size_t p = 0; p < ts[a].size(); ++p) {
                if (ts[a][p] > ts[b][p]) le = false;
                if (ts[a][p] != ts[b][p]) {
                    bumps += ts[b][p] - ts[a][p];
                    at = static_cast<int>(p);
                }
            }
            if (!le) continue;
            order.emplace_back(a, b);
            if (bumps == 1) {
                auto maps_a = coordinate_maps(v0, v1, c.n(), ts[a]);
                std::vector<Mor> step;
                int coord = 0;
                for (size_t i = 0; i < c.n().parts.size(); ++i)
                    for (int j = 0; j < c.n().parts[i]; ++j, ++coord) {
                        if (coord == at) {
                            // raising 0->1 inserts v0; raising 1->2 inserts v1
                            step.push_back(ts[a][coord] == 0 ? v0[i] : v1[i]);
                        } else {
                            step.push_back(e.identity(maps_a[coord].dom()));
                        }
                    }
                cover_maps[{a, b}] = e.tensor_list_mor(step);
            }
        }
    DiagramOnPoset d(m, order, labels, cover_maps);
    PosetColimit col = poset_colimit(d, e);
    return QColimit{col.obj, col.cocone};
}

Subobject q_subobject(const DCPoset& c, const std::vector<Mor>& v0, const std::vector<Mor>& v1) {
    const auto& e = engine_for(v0[0].tag());
    auto maxs = c.maximal_tuples();
    if (maxs.empty()) {
        Subobject s;
        s.ambient = ambient_power(v1, c.n());
        s.indices.assign(1, {});
        return s;
    }
    Subobject s = e.image_subobject(tuple_label_map(v0, v1, c.n(), maxs[0]));
    for (size_t i = 1; i < maxs.size(); ++i)
        s = e.sub_union(s, e.image_subobject(tuple_label_map(v0, v1, c.n(), maxs[i])));
    return s;
}

EquivariantArrow mk_map(const std::vector<Mor>& v0, const std::vector<Mor>& v1, const MultiIndex& n,
                        const MultiIndex& k) {
    if (!k.leq(n)) throw EngineError("mk_map: k exceeds n");
    const auto& e = engine_for(v0[0].tag());

    if (k == n) {
        PPResult p = pp_multi(v1, n);
        return *p.equivariant;
    }

    // Inner pushout product over the split index (n_i - k_i, k_i).
    std::vector<Mor> family;
    std::vector<int> split;
    for (size_t i = 0; i < n.parts.size(); ++i) {
        family.push_back(v0[i]);
        split.push_back(n.parts[i] - k.parts[i]);
        family.push_back(v1[i]);
        split.push_back(k.parts[i]);
    }
    PPResult inner = pp_multi(family, MultiIndex::unchecked(split));
    SubgroupEmbedding emb = SubgroupEmbedding::young(n.parts, k.parts);

    InducedAction dom_ind = induce(emb, inner.equivariant->dom_action);
    InducedAction cod_ind = induce(emb, inner.equivariant->cod_action);

    // The arrow between the inductions: G . f descends to the quotients.
    const auto& G = *emb.big;
    std::vector<Mor> legs(G.order());
    for (int g = 0; g < G.order(); ++g) legs[g] = e.compose(cod_ind.copies[g], inner.arrow);
    Mor gf = e.coproduct_map(dom_ind.projection.dom(), legs);
    auto arrow = e.factor_through_epi(dom_ind.projection, e.compose(cod_ind.projection, gf));
    if (!arrow) throw EngineError("mk_map: induced arrow does not descend");
    return EquivariantArrow(*arrow, dom_ind.action, cod_ind.action);
}

int FiltrationCertificate::expected_step_count() const {
    int full = 1;
    for (int p : n.parts) full *= p + 1;
    return mode == FiltrationMode::FullComposite ? full : full - 1;
}

namespace {

struct StageContext {
    const EngineContract* e;
    std::vector<Mor> v0, v1;
    MultiIndex n;
    Obj ambient;

    Subobject q_sub(const std::vector<Tuple>& tuples) const {
        DCPoset c(n, tuples);
        return q_subobject(c, v0, v1);
    }
};

std::vector<Tuple> base_tuples(const MultiIndex& n) {
    std::vector<Tuple> out;
    for (const auto& t : DCPoset::full(n).tuples())
        if (std::find(t.begin(), t.end(), 0) != t.end()) out.push_back(t);
    return out;
}

std::vector<MultiIndex> step_indices(const MultiIndex& n, FiltrationMode mode) {
    std::vector<MultiIndex> out;
    for (const auto& k : n.sub_indices())
        if (mode == FiltrationMode::FullComposite || k.total() >= 1) out.push_back(k);
    return out;
}

FiltrationCertificate decompose(const std::vector<Mor>& v0, const std::vector<Mor>& v1,
                                const MultiIndex& n, FiltrationMode mode) {
    if (v0.size() != n.parts.size() || v1.size() != n.parts.size())
        throw EngineError("decompose: family/index length mismatch");
    const auto& e = engine_for(v0[0].tag());
    for (size_t i = 0; i < v0.size(); ++i)
        if (!e.equal_objects(v0[i].cod(), v1[i].dom()))
            throw EngineError("decompose: families are not composable");
    bool mono = e.supports_subobjects();
    for (const auto& f : v0) mono = mono && e.is_mono(f);
    for (const auto& f : v1) mono = mono && e.is_mono(f);
    if (!mono) throw EngineError("decompose: exact replay needs subobject-capable monos");

    StageContext ctx{&e, v0, v1, n, ambient_power(v1, n)};

    FiltrationCertificate cert;
    cert.engine = v0[0].tag();
    cert.mode = mode;
    cert.n = n;
    cert.v0 = v0;
    cert.v1 = v1;
    cert.mono_mode = true;

    std::vector<Tuple> stage = base_tuples(n);
    if (mode == FiltrationMode::Kappa) {
        stage.push_back(Tuple(n.total(), 1));
        std::sort(stage.begin(), stage.end());
    }
    cert.initial_stage = ctx.q_sub(stage);

    for (const auto& k : step_indices(n, mode)) {
        FiltrationStep step{k, orbit_cells(n, k), Subobject{}};
        for (const auto& o : step.orbit) stage.push_back(o);
        std::sort(stage.begin(), stage.end());
        step.stage_after = ctx.q_sub(stage);
        cert.steps.push_back(std::move(step));
    }
    cert.final_stage = ctx.q_sub(stage);
    return cert;
}

} // namespace

FiltrationCertificate decompose_composite_power(const std::vector<Mor>& v0, const std::vector<Mor>& v1,
                                                const MultiIndex& n) {
    return decompose(v0, v1, n, FiltrationMode::FullComposite);
}

FiltrationCertificate decompose_kappa(const std::vector<Mor>& v0, const std::vector<Mor>& v1,
                                      const MultiIndex& n) {
    return decompose(v0, v1, n, FiltrationMode::Kappa);
}

namespace {

bool sub_equal(const Subobject& a, const Subobject& b) {
    size_t n = std::max(a.indices.size(), b.indices.size());
    for (size_t k = 0; k < n; ++k) {
        const std::vector<int> av = k < a.indices.size() ? a.indices[k] : std::vector<int>{};
        const std::vector<int> bv = k < b.indices.size() ? b.indices[k] : std::vector<int>{};
        if (av != bv) return false;
    }
    return true;
}

} // namespace

CertificateVerdict verify_certificate(const FiltrationCertificate& c) {
    CertificateVerdict v;
    const auto& e = engine_for(c.engine);
    StageContext ctx{&e, c.v0, c.v1, c.n, ambient_power(c.v1, c.n)};

    auto fail = [&](const std::string& msg) {
        v.pass = false;
        v.failure = msg;
        return v;
    };

    auto expected_ks = step_indices(c.n, c.mode);
    if (static_cast<int>(c.steps.size()) != c.expected_step_count() ||
        c.steps.size() != expected_ks.size())
        return fail("step count mismatch");

    // Initial stage.
    std::vector<Tuple> stage = base_tuples(c.n);
    if (c.mode == FiltrationMode::Kappa) {
        stage.push_back(Tuple(c.n.total(), 1));
        std::sort(stage.begin(), stage.end());
    }
    Subobject cur = ctx.q_sub(stage);
    if (!sub_equal(cur, c.initial_stage)) return fail("initial stage mismatch");

    for (size_t s = 0; s < c.steps.size(); ++s) {
        const auto& step = c.steps[s];
        if (!(step.k == expected_ks[s])) return fail("step order mismatch at " + step.k.to_string());
        auto orbit = orbit_cells(c.n, step.k);
        if (orbit != step.orbit) return fail("orbit mismatch at " + step.k.to_string());
        long long expect_size = 1;
        for (size_t i = 0; i < c.n.parts.size(); ++i) {
            // binomial(n_i, k_i)
            long long b = 1;
            for (int t = 0; t < step.k.parts[i]; ++t)
                b = b * (c.n.parts[i] - t) / (t + 1);
            expect_size *= b;
        }
        if (static_cast<long long>(orbit.size()) != expect_size)
            return fail("orbit size mismatch at " + step.k.to_string());

        // Attach each orbit cell: the square is a pushout exactly when the
        // new piece meets the current stage in C_o = D_o minus its top.
        Subobject acc = cur;
        for (const auto& o : orbit) {
            DCPoset d_o = DCPoset::downward_closure(c.n, {o});
            std::vector<Tuple> c_tuples;
            for (const auto& t : d_o.tuples())
                if (t != o) c_tuples.push_back(t);
            Subobject d_sub = ctx.q_sub(d_o.tuples());
            Subobject c_sub = ctx.q_sub(c_tuples);
            Subobject meet = e.sub_intersection(d_sub, acc);
            if (!sub_equal(meet, c_sub))
                return fail("attaching intersection mismatch at " + step.k.to_string());
            acc = e.sub_union(acc, d_sub);
        }
        for (const auto& o : orbit) stage.push_back(o);
        std::sort(stage.begin(), stage.end());
        Subobject next = ctx.q_sub(stage);
        if (!sub_equal(next, acc)) return fail("stage union mismatch at " + step.k.to_string());
        if (!sub_equal(next, step.stage_after)) return fail("stage mismatch at " + step.k.to_string());
        if (!DCPoset(c.n, stage).closed_under_block_permutations())
            return fail("stage not equivariant at " + step.k.to_string());
        cur = next;
        ++v.steps_replayed;
    }

    // Final object: the full tensor power, reached exactly.
    if (!sub_equal(cur, c.final_stage)) return fail("final stage mismatch");
    if (!sub_equal(cur, e.full_subobject(ctx.ambient))) return fail("final object is not the full power");

    // Final composite arrow agrees with the direct computation.
    if (c.mode == FiltrationMode::FullComposite) {
        std::vector<Mor> w;
        for (size_t i = 0; i < c.v0.size(); ++i) w.push_back(e.compose(c.v1[i], c.v0[i]));
        PPResult direct = pp_multi(w, c.n);
        if (!direct.mono_mode || !sub_equal(direct.domain_subobject, c.initial_stage))
            return fail("composite power domain differs from the replayed stage");
    } else {
        // kappa's domain: dom((v1 v0)^{pp n}) glued with X1^{(x)n} over dom(v0^{pp n}).
        Subobject x1_image =
            e.image_subobject(tuple_label_map(c.v0, c.v1, c.n, Tuple(c.n.total(), 1)));
        std::vector<Mor> w;
        for (size_t i = 0; i < c.v0.size(); ++i) w.push_back(e.compose(c.v1[i], c.v0[i]));
        PPResult pw = pp_multi(w, c.n);
        Subobject kappa_dom = e.sub_union(pw.domain_subobject, x1_image);
        if (!sub_equal(kappa_dom, c.initial_stage))
            return fail("kappa domain differs from the replayed stage");
    }
    return v;
}

} // namespace pplab
