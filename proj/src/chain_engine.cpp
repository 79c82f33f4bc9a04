#include "pplab/chain.hpp"

#include <algorithm>
#include <numeric>

namespace pplab {

namespace {

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

class ChainEngine final : public EngineContract {
public:
    EngineTag tag() const override { return EngineTag::Chain; }

    Obj initial() const override { return Obj(ChainComplex::zero()); }
    Obj unit() const override {
        return Obj(ChainComplex::concentrated(0, FPAbelianGroup::free_group(1)));
    }

    Mor identity(const Obj& x) const override {
        const auto& c = x.chain();
        std::map<int, IntMatrix> mats;
        for (int d = c.lo(); d <= c.hi(); ++d) mats[d] = IntMatrix::identity(c.gens(d));
        return make_chain_map(x.chain_ptr(), x.chain_ptr(), std::move(mats));
    }

    Mor compose(const Mor& g, const Mor& f) const override {
        const auto& fm = f.chain();
        const auto& gm = g.chain();
        if (!fm.cod_ptr()->equal_to(*gm.dom_ptr())) throw EngineError("compose: codomain/domain mismatch");
        std::map<int, IntMatrix> mats;
        for (int d = fm.dom_ptr()->lo(); d <= fm.dom_ptr()->hi(); ++d) mats[d] = gm.at(d) * fm.at(d);
        return make_chain_map(fm.dom_ptr(), gm.cod_ptr(), std::move(mats));
    }

    bool equal_objects(const Obj& x, const Obj& y) const override {
        return x.chain().equal_to(y.chain());
    }

    bool equal_morphisms(const Mor& f, const Mor& g) const override {
        const auto& fm = f.chain();
        const auto& gm = g.chain();
        if (!equal_objects(f.dom(), g.dom()) || !equal_objects(f.cod(), g.cod())) return false;
        const auto& dom = *fm.dom_ptr();
        const auto& cod = *fm.cod_ptr();
        for (int d = dom.lo(); d <= dom.hi(); ++d) {
            IntMatrix delta = fm.at(d) - gm.at(d);
            if (delta.is_zero()) continue;
            if (cod.gens(d) == 0) continue;
            if (!columns_in_span(cod.group(d).rels(), delta)) return false;
        }
        return true;
    }

    Obj coproduct(const std::vector<Obj>& xs, std::vector<Mor>* injections) const override {
        int lo = 0, hi = -1;
        bool any = false;
        for (const auto& x : xs) {
            const auto& c = x.chain();
            if (c.is_zero_complex()) continue;
            lo = any ? std::min(lo, c.lo()) : c.lo();
            hi = any ? std::max(hi, c.hi()) : c.hi();
            any = true;
        }
        std::vector<FPAbelianGroup> groups;
        std::vector<IntMatrix> diffs;
        std::vector<std::map<int, int>> offsets(xs.size());
        for (int d = lo; d <= hi; ++d) {
            int g = 0;
            IntMatrix rel(0, 0), diff(0, 0);
            bool first = true;
            for (size_t i = 0; i < xs.size(); ++i) {
                const auto& c = xs[i].chain();
                offsets[i][d] = g;
                g += c.gens(d);
                if (first) {
                    rel = c.group(d).rels();
                    diff = c.diff(d);
                    first = false;
                } else {
                    rel = block_diag(rel, c.group(d).rels());
                    diff = block_diag(diff, c.diff(d));
                }
            }
            groups.emplace_back(g, rel);
            diffs.push_back(std::move(diff));
        }
        auto sum = hi < lo ? ChainComplex::zero()
                           : std::make_shared<ChainComplex>(lo, std::move(groups), std::move(diffs));
        if (injections) {
            injections->clear();
            for (size_t i = 0; i < xs.size(); ++i) {
                const auto& c = xs[i].chain();
                std::map<int, IntMatrix> mats;
                for (int d = c.lo(); d <= c.hi(); ++d) {
                    IntMatrix m(sum->gens(d), c.gens(d));
                    for (int j = 0; j < c.gens(d); ++j) m.at(offsets[i][d] + j, j) = 1;
                    mats[d] = std::move(m);
                }
                injections->push_back(make_chain_map(xs[i].chain_ptr(), sum, std::move(mats)));
            }
        }
        return Obj(ChainPtr(sum));
    }

    Mor coproduct_map(const Obj& coprod, const std::vector<Mor>& legs) const override {
        const auto& sum = coprod.chain();
        ChainPtr cod;
        for (const auto& leg : legs) cod = leg.chain().cod_ptr();
        if (!cod) cod = ChainComplex::zero();
        std::map<int, IntMatrix> mats;
        for (int d = sum.lo(); d <= sum.hi(); ++d) {
            IntMatrix m(cod->gens(d), sum.gens(d));
            int off = 0;
            for (const auto& leg : legs) {
                IntMatrix lm = leg.chain().at(d);
                for (int i = 0; i < lm.rows(); ++i)
                    for (int j = 0; j < lm.cols(); ++j) m.at(i, off + j) = lm.at(i, j);
                off += lm.cols();
            }
            if (off != sum.gens(d)) throw EngineError("coproduct_map: legs do not cover the coproduct");
            mats[d] = std::move(m);
        }
        return make_chain_map(coprod.chain_ptr(), cod, std::move(mats));
    }

    Mor coequalizer(const Mor& f, const Mor& g) const override {
        const auto& fm = f.chain();
        const auto& gm = g.chain();
        if (!fm.cod_ptr()->equal_to(*gm.cod_ptr()) || !fm.dom_ptr()->equal_to(*gm.dom_ptr()))
            throw EngineError("coequalizer: not a parallel pair");
        const auto& c = *fm.cod_ptr();
        std::vector<FPAbelianGroup> groups;
        std::vector<IntMatrix> diffs;
        for (int d = c.lo(); d <= c.hi(); ++d) {
            IntMatrix extra = fm.at(d) - gm.at(d);
            groups.emplace_back(c.gens(d), c.group(d).rels().hcat(extra));
            diffs.push_back(c.diff(d));
        }
        auto q = c.is_zero_complex()
                     ? ChainComplex::zero()
                     : std::make_shared<ChainComplex>(c.lo(), std::move(groups), std::move(diffs));
        std::map<int, IntMatrix> mats;
        for (int d = c.lo(); d <= c.hi(); ++d) mats[d] = IntMatrix::identity(c.gens(d));
        return make_chain_map(fm.cod_ptr(), q, std::move(mats));
    }

    std::optional<Mor> factor_through_epi(const Mor& e, const Mor& h) const override {
        const auto& em = e.chain();
        const auto& hm = h.chain();
        const auto& mid = *em.cod_ptr();
        const auto& src = *em.dom_ptr();
        // Our regular epis keep the generator set; require that shape.
        for (int d = mid.lo(); d <= mid.hi(); ++d) {
            if (mid.gens(d) != src.gens(d)) return std::nullopt;
            if (em.at(d) != IntMatrix::identity(src.gens(d))) return std::nullopt;
        }
        std::map<int, IntMatrix> mats;
        for (int d = src.lo(); d <= src.hi(); ++d) mats[d] = hm.at(d);
        auto m = ChainMap::try_make(em.cod_ptr(), hm.cod_ptr(), std::move(mats));
        if (!m) return std::nullopt;
        if (!equal_morphisms(compose(*m, e), h)) return std::nullopt;
        return m;
    }

    Obj tensor_list(const std::vector<Obj>& xs) const override {
        std::vector<ChainPtr> factors;
        for (const auto& x : xs) factors.push_back(x.chain_ptr());
        return Obj(tensor_complex(factors));
    }

    Mor tensor_list_mor(const std::vector<Mor>& fs) const override {
        std::vector<ChainPtr> doms, cods;
        for (const auto& f : fs) {
            doms.push_back(f.chain().dom_ptr());
            cods.push_back(f.chain().cod_ptr());
        }
        auto dom = tensor_complex(doms);
        auto cod = tensor_complex(cods);
        auto dmeta = dom->tensor_meta();
        auto cmeta = cod->tensor_meta();
        std::map<int, IntMatrix> mats;
        for (int d = dom->lo(); d <= dom->hi(); ++d) {
            const auto& dts = dmeta->tuples[d - dmeta->lo];
            IntMatrix m(cod->gens(d), dom->gens(d));
            for (int col = 0; col < static_cast<int>(dts.size()); ++col) {
                // Expand the tensor of images of each factor generator.
                std::vector<std::pair<ChainTensorMeta::Summand, Int>> terms{
                    {ChainTensorMeta::Summand{dts[col].degrees, std::vector<int>(fs.size(), -1)}, Int(1)}};
                for (size_t p = 0; p < fs.size(); ++p) {
                    IntMatrix comp = fs[p].chain().at(dts[col].degrees[p]);
                    std::vector<std::pair<ChainTensorMeta::Summand, Int>> next;
                    for (const auto& [summand, coef] : terms)
                        for (int v = 0; v < comp.rows(); ++v) {
                            if (comp.at(v, dts[col].gens[p]) == 0) continue;
                            auto s2 = summand;
                            s2.gens[p] = v;
                            next.emplace_back(s2, coef * comp.at(v, dts[col].gens[p]));
                        }
                    terms = std::move(next);
                }
                for (const auto& [summand, coef] : terms) {
                    auto it = cmeta->index[d - cmeta->lo].find(summand);
                    if (it == cmeta->index[d - cmeta->lo].end())
                        throw EngineError("tensor map: target summand missing");
                    m.at(it->second, col) += coef;
                }
            }
            mats[d] = std::move(m);
        }
        return make_chain_map(dom, cod, std::move(mats));
    }

    Mor permute_factors(const std::vector<Obj>& xs, const std::vector<int>& perm) const override {
        std::vector<ChainPtr> src, dst(xs.size());
        for (const auto& x : xs) src.push_back(x.chain_ptr());
        for (size_t i = 0; i < xs.size(); ++i) dst[perm[i]] = src[i];
        auto dom = tensor_complex(src);
        auto cod = tensor_complex(dst);
        auto dmeta = dom->tensor_meta();
        auto cmeta = cod->tensor_meta();
        std::map<int, IntMatrix> mats;
        for (int d = dom->lo(); d <= dom->hi(); ++d) {
            const auto& dts = dmeta->tuples[d - dmeta->lo];
            IntMatrix m(cod->gens(d), dom->gens(d));
            for (int col = 0; col < static_cast<int>(dts.size()); ++col) {
                const auto& s = dts[col];
                ChainTensorMeta::Summand t;
                t.degrees.resize(s.degrees.size());
                t.gens.resize(s.gens.size());
                for (size_t i = 0; i < s.degrees.size(); ++i) {
                    t.degrees[perm[i]] = s.degrees[i];
                    t.gens[perm[i]] = s.gens[i];
                }
                // Koszul sign: (-1)^{sum of deg_i*deg_j over inversions}.
                Int sign = 1;
                for (size_t i = 0; i < s.degrees.size(); ++i)
                    for (size_t j = i + 1; j < s.degrees.size(); ++j)
                        if (perm[i] > perm[j] && (s.degrees[i] * s.degrees[j]) % 2 != 0) sign = -sign;
                auto it = cmeta->index[d - cmeta->lo].find(t);
                if (it == cmeta->index[d - cmeta->lo].end())
                    throw EngineError("permute: target summand missing");
                m.at(it->second, col) = sign;
            }
            mats[d] = std::move(m);
        }
        return make_chain_map(dom, cod, std::move(mats));
    }

    bool is_mono(const Mor& f) const override {
        const auto& fm = f.chain();
        const auto& dom = *fm.dom_ptr();
        const auto& cod = *fm.cod_ptr();
        for (int d = dom.lo(); d <= dom.hi(); ++d) {
            if (dom.gens(d) == 0) continue;
            // Kernel of (x -> f x mod relations) must lie in dom's relations.
            IntMatrix stacked = fm.at(d).hcat(cod.group(d).rels());
            IntMatrix ker = kernel_basis(stacked);
            IntMatrix proj(dom.gens(d), ker.cols());
            for (int i = 0; i < dom.gens(d); ++i)
                for (int j = 0; j < ker.cols(); ++j) proj.at(i, j) = ker.at(i, j);
            if (!columns_in_span(dom.group(d).rels(), proj)) return false;
        }
        return true;
    }

    bool is_epi(const Mor& f) const override {
        const auto& fm = f.chain();
        const auto& cod = *fm.cod_ptr();
        for (int d = cod.lo(); d <= cod.hi(); ++d) {
            if (cod.gens(d) == 0) continue;
            IntMatrix span = fm.at(d).hcat(cod.group(d).rels());
            SNFResult s = smith_normal_form(span);
            bool onto = s.nonzero_count == cod.gens(d);
            for (int i = 0; i < s.nonzero_count && onto; ++i) onto = s.diagonal[i] == 1;
            if (!onto) return false;
        }
        return true;
    }

    std::optional<Mor> find_isomorphism(const Obj& x, const Obj& y) const override;

    std::optional<Mor> lift_through_mono(const Mor& m, const Mor& h) const override {
        const auto& mm = m.chain();
        const auto& hm = h.chain();
        std::map<int, IntMatrix> mats;
        for (int d = hm.dom_ptr()->lo(); d <= hm.dom_ptr()->hi(); ++d) {
            int gm_ = mm.dom_ptr()->gens(d);
            IntMatrix stacked = mm.at(d).hcat(mm.cod_ptr()->group(d).rels());
            auto sol = solve_linear(stacked, hm.at(d));
            if (!sol) return std::nullopt;
            IntMatrix x(gm_, hm.dom_ptr()->gens(d));
            for (int i = 0; i < gm_; ++i)
                for (int j = 0; j < x.cols(); ++j) x.at(i, j) = sol->at(i, j);
            mats[d] = std::move(x);
        }
        auto lift = ChainMap::try_make(hm.dom_ptr(), mm.dom_ptr(), std::move(mats));
        if (!lift) return std::nullopt;
        if (!equal_morphisms(compose(m, *lift), h)) return std::nullopt;
        return lift;
    }

private:
    static ChainPtr tensor_complex(const std::vector<ChainPtr>& factors);
};

ChainPtr ChainEngine::tensor_complex(const std::vector<ChainPtr>& factors) {
    auto meta = std::make_shared<ChainTensorMeta>();
    meta->factors = factors;
    for (const auto& f : factors)
        if (f->is_zero_complex()) {
            auto z = std::make_shared<ChainComplex>();
            z->set_tensor_meta(meta);
            return z;
        }
    int lo = 0, hi = 0;
    for (const auto& f : factors) {
        lo += f->lo();
        hi += f->hi();
    }
    if (factors.empty()) {
        auto unit = std::make_shared<ChainComplex>(
            0, std::vector<FPAbelianGroup>{FPAbelianGroup::free_group(1)},
            std::vector<IntMatrix>{IntMatrix(0, 1)});
        unit->set_tensor_meta(meta);
        return unit;
    }

    meta->lo = lo;
    meta->tuples.resize(hi - lo + 1);
    meta->index.resize(hi - lo + 1);
    // Enumerate summands in lex order (degrees, then generator tuples).
    std::vector<int> degs(factors.size());
    std::function<void(size_t, int)> rec_deg = [&](size_t p, int total) {
        if (p == factors.size()) {
            if (total < lo || total > hi) return;
            std::vector<int> gens(factors.size(), 0);
            std::function<void(size_t)> rec_gen = [&](size_t q) {
                if (q == factors.size()) {
                    ChainTensorMeta::Summand s{degs, gens};
                    meta->index[total - lo][s] = static_cast<int>(meta->tuples[total - lo].size());
                    meta->tuples[total - lo].push_back(std::move(s));
                    return;
                }
                for (gens[q] = 0; gens[q] < factors[q]->gens(degs[q]); ++gens[q]) rec_gen(q + 1);
            };
            rec_gen(0);
            return;
        }
        for (degs[p] = factors[p]->lo(); degs[p] <= factors[p]->hi(); ++degs[p]) rec_deg(p + 1, total + degs[p]);
    };
    rec_deg(0, 0);

    std::vector<FPAbelianGroup> groups;
    std::vector<IntMatrix> diffs;
    for (int d = lo; d <= hi; ++d) {
        const auto& ts = meta->tuples[d - lo];
        int g = static_cast<int>(ts.size());

        // Relations: factor relations tensored with basis vectors elsewhere.
        std::vector<IntMatrix> rel_cols;
        int rel_count = 0;
        for (size_t p = 0; p < factors.size(); ++p) {
            // Group relation columns by (degrees, gens with position p erased).
            for (int col = 0; col < g; ++col) {
                const auto& s = ts[col];
                const IntMatrix& r = factors[p]->group(s.degrees[p]).rels();
                if (s.gens[p] != 0) continue; // generate each class once, from gen 0
                for (int rc = 0; rc < r.cols(); ++rc) ++rel_count;
            }
        }
        IntMatrix rel(g, rel_count);
        int rcol = 0;
        for (size_t p = 0; p < factors.size(); ++p)
            for (int col = 0; col < g; ++col) {
                const auto& s = ts[col];
                if (s.gens[p] != 0) continue;
                const IntMatrix& r = factors[p]->group(s.degrees[p]).rels();
                for (int rc = 0; rc < r.cols(); ++rc) {
                    for (int v = 0; v < r.rows(); ++v) {
                        if (r.at(v, rc) == 0) continue;
                        auto s2 = s;
                        s2.gens[p] = v;
                        rel.at(meta->index[d - lo].at(s2), rcol) = r.at(v, rc);
                    }
                    ++rcol;
                }
            }
        groups.emplace_back(g, rel);

        // Differential with Koszul signs.
        int g_below = d - 1 >= lo ? static_cast<int>(meta->tuples[d - 1 - lo].size()) : 0;
        IntMatrix m(g_below, g);
        for (int col = 0; col < g; ++col) {
            const auto& s = ts[col];
            Int sign = 1;
            for (size_t p = 0; p < factors.size(); ++p) {
                if (p > 0 && s.degrees[p - 1] % 2 != 0) sign = -sign;
                IntMatrix dp = factors[p]->diff(s.degrees[p]);
                for (int v = 0; v < dp.rows(); ++v) {
                    if (dp.at(v, s.gens[p]) == 0) continue;
                    auto s2 = s;
                    s2.degrees[p] -= 1;
                    s2.gens[p] = v;
                    auto it = meta->index[d - 1 - lo].find(s2);
                    if (it == meta->index[d - 1 - lo].end())
                        throw EngineError("tensor: differential target missing");
                    m.at(it->second, col) += sign * dp.at(v, s.gens[p]);
                }
            }
        }
        diffs.push_back(std::move(m));
    }
    auto obj = std::make_shared<ChainComplex>(lo, std::move(groups), std::move(diffs));
    obj->set_tensor_meta(meta);
    return obj;
}

namespace {

// A bounded complex of free groups in explicit free coordinates, together
// with the conjugating maps from/to the presented original.
struct FreeCoords {
    int lo = 0, hi = -1;
    std::vector<int> ranks;
    std::vector<IntMatrix> diffs;   // diffs[i]: rank(lo+i-1) x rank(lo+i)
    std::vector<IntMatrix> to_free; // per degree: rank x gens
    std::vector<IntMatrix> from_free;
};

std::optional<FreeCoords> to_free_coords(const ChainComplex& c) {
    FreeCoords f;
    f.lo = c.lo();
    f.hi = c.hi();
    if (c.is_zero_complex()) return f;
    for (int d = c.lo(); d <= c.hi(); ++d) {
        if (!c.group(d).is_free()) return std::nullopt;
        f.ranks.push_back(c.group(d).type().rank);
        f.to_free.push_back(c.group(d).to_canonical());
        f.from_free.push_back(c.group(d).from_canonical());
    }
    for (int d = c.lo(); d <= c.hi(); ++d) {
        IntMatrix above = d - 1 >= c.lo() ? f.to_free[d - 1 - c.lo()] : IntMatrix(0, c.gens(d - 1));
        f.diffs.push_back(above * c.diff(d) * f.from_free[d - c.lo()]);
    }
    return f;
}

// Canonical split form: every free bounded complex is a sum of [Z -t-> Z]
// pieces and bare Z summands; ranks plus the invariant factors of each
// differential classify it. Returns per-degree transforms to the canonical
// basis (consumed-by-above block first, then pivot block, then kernel block).
struct CanonicalForm {
    std::vector<std::vector<Int>> pivots; // per degree: invariant factors of d_d
    std::vector<IntMatrix> t, t_inv;      // per degree: old -> canonical
    std::vector<int> consumed;            // per degree: #targets from above
};

CanonicalForm canonicalize_free(const FreeCoords& f) {
    int n = static_cast<int>(f.ranks.size());
    CanonicalForm cf;
    cf.pivots.resize(n);
    cf.consumed.assign(n, 0);
    cf.t.resize(n);
    cf.t_inv.resize(n);
    for (int i = 0; i < n; ++i) {
        cf.t[i] = IntMatrix::identity(f.ranks[i]);
        cf.t_inv[i] = IntMatrix::identity(f.ranks[i]);
    }
    std::vector<IntMatrix> d = f.diffs;

    for (int i = n - 1; i >= 0; --i) {
        int cons = (i + 1 < n) ? cf.consumed[i] : 0;
        int rank = f.ranks[i];
        int active = rank - cons;
        if (i == n - 1) cons = 0, active = rank;
        // Active block of d_i (consumed columns are exact zeros).
        IntMatrix m(d[i].rows(), active);
        for (int r = 0; r < d[i].rows(); ++r)
            for (int c2 = 0; c2 < active; ++c2) m.at(r, c2) = d[i].at(r, cons + c2);
        for (int r = 0; r < d[i].rows(); ++r)
            for (int c2 = 0; c2 < cons; ++c2)
                if (d[i].at(r, c2) != 0) throw EngineError("canonicalize: consumed column not exact");

        SNFResult s = smith_normal_form(m);
        for (int t = 0; t < s.nonzero_count; ++t) cf.pivots[i].push_back(s.diagonal[t]);

        // Column transform on C_i: identity on consumed block, V on active.
        IntMatrix tv = block_diag(IntMatrix::identity(cons), s.v);
        IntMatrix tv_inv = block_diag(IntMatrix::identity(cons), s.v_inv);
        d[i] = d[i] * tv;
        cf.t[i] = tv_inv * cf.t[i];
        cf.t_inv[i] = cf.t_inv[i] * tv;

        // Row transform on C_{i-1}.
        if (i - 1 >= 0) {
            d[i] = s.u * d[i];
            cf.t[i - 1] = s.u * cf.t[i - 1];
            cf.t_inv[i - 1] = cf.t_inv[i - 1] * s.u_inv;
            d[i - 1] = d[i - 1] * s.u_inv;
            cf.consumed[i - 1] = s.nonzero_count;
        }
    }
    return cf;
}

} // namespace

std::optional<Mor> ChainEngine::find_isomorphism(const Obj& xo, const Obj& yo) const {
    const auto& x = xo.chain();
    const auto& y = yo.chain();
    // Degreewise types must match over the union range.
    int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
    for (int d = lo; d <= hi; ++d)
        if (!(x.group(d).type() == y.group(d).type())) return std::nullopt;

    if (x.equal_to(y)) return identity(xo);

    auto fx = to_free_coords(x);
    auto fy = to_free_coords(y);
    if (!fx || !fy) return std::nullopt; // torsion case: only literal matches

    // Align ranges by padding ranks with zeros.
    auto pad = [&](FreeCoords& f) {
        while (f.lo > lo) {
            f.ranks.insert(f.ranks.begin(), 0);
            f.to_free.insert(f.to_free.begin(), IntMatrix(0, 0));
            f.from_free.insert(f.from_free.begin(), IntMatrix(0, 0));
            f.diffs.insert(f.diffs.begin(), IntMatrix(0, 0));
            --f.lo;
            f.diffs[1] = IntMatrix(0, f.ranks[1]);
        }
        while (f.hi < hi) {
            f.ranks.push_back(0);
            f.to_free.push_back(IntMatrix(0, 0));
            f.from_free.push_back(IntMatrix(0, 0));
            f.diffs.push_back(IntMatrix(f.ranks[f.ranks.size() - 2], 0));
            ++f.hi;
        }
    };
    if (!fx->ranks.empty() && !fy->ranks.empty()) {
        pad(*fx);
        pad(*fy);
    } else if (fx->ranks.empty() != fy->ranks.empty()) {
        return std::nullopt;
    } else {
        return identity(xo); // both zero complexes
    }

    if (fx->ranks != fy->ranks) return std::nullopt;
    CanonicalForm cx = canonicalize_free(*fx);
    CanonicalForm cy = canonicalize_free(*fy);
    for (size_t i = 0; i < cx.pivots.size(); ++i)
        if (cx.pivots[i] != cy.pivots[i]) return std::nullopt;

    std::map<int, IntMatrix> mats;
    for (int d = lo; d <= hi; ++d) {
        int i = d - lo;
        if (fx->ranks[i] == 0) {
            mats[d] = IntMatrix(y.gens(d), x.gens(d));
            continue;
        }
        IntMatrix phi = cy.t_inv[i] * cx.t[i];
        mats[d] = fy->from_free[i] * phi * fx->to_free[i];
    }
    auto iso = ChainMap::try_make(xo.chain_ptr(), yo.chain_ptr(), std::move(mats));
    if (!iso) return std::nullopt;
    if (!is_mono(*iso) || !is_epi(*iso)) return std::nullopt;
    return iso;
}

} // namespace

const EngineContract& chain_engine() {
    static ChainEngine e;
    return e;
}

} // namespace pplab
