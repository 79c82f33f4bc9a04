#include "pplab/simplicial.hpp"
#include "pplab/union_find.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pplab {

namespace {

// Per-degree quotient of Y by the relations f(x) ~ g(x) over all simplices of
// X, followed by renormalization to nondegenerate form.
class QuotientBuilder {
public:
    QuotientBuilder(const SimplicialMap& f, const SimplicialMap& g)
        : y_(f.cod_ptr()), depth_(y_->dim()) {
        formals_.resize(depth_ + 1);
        index_.resize(depth_ + 1);
        for (int k = 0; k <= depth_; ++k) {
            formals_[k] = y_->formals(k);
            for (int i = 0; i < static_cast<int>(formals_[k].size()); ++i) index_[k][formals_[k][i]] = i;
            uf_.emplace_back(static_cast<int>(formals_[k].size()));
        }
        const auto& x = *f.dom_ptr();
        for (int k = 0; k <= depth_; ++k)
            for (const auto& xf : x.formals(k)) uf_[k].unite(id_of(k, f.apply(xf)), id_of(k, g.apply(xf)));
        build();
    }

    SSetPtr quotient() const { return quotient_; }
    Mor projection() const { return projection_; }

private:
    int id_of(int k, const FormalSimplex& s) const {
        auto it = index_[k].find(s);
        if (it == index_[k].end()) throw EngineError("quotient: formal simplex out of range");
        return it->second;
    }

    int class_of(int k, const FormalSimplex& s) { return uf_[k].find(id_of(k, s)); }

    FormalSimplex class_nf(int k, int root) {
        auto memo = nf_memo_[k].find(root);
        if (memo != nf_memo_[k].end()) return memo->second;
        // Degeneracy directions of the class: union of members' word sets.
        int dir = -1;
        for (int i = 0; i < static_cast<int>(formals_[k].size()); ++i) {
            if (uf_[k].find(i) != root) continue;
            for (int j : formals_[k][i].word) dir = std::max(dir, j);
        }
        FormalSimplex out;
        if (dir < 0) {
            out = FormalSimplex{{}, CellRef{k, cell_index_.at(k).at(root)}};
        } else {
            const FormalSimplex& rep = formals_[k][root];
            int sub = uf_[k - 1].find(id_of(k - 1, y_->face_formal(rep, dir)));
            FormalSimplex inner = class_nf(k - 1, sub);
            out = FormalSimplex{word_push_degeneracy(inner.word, dir), inner.cell};
        }
        nf_memo_[k][root] = out;
        return out;
    }

    void build() {
        nf_memo_.assign(depth_ + 1, {});
        cell_index_.clear();
        std::vector<std::vector<int>> roots(depth_ + 1);
        for (int k = 0; k <= depth_; ++k) {
            std::map<int, bool> degenerate; // root -> has degenerate member
            for (int i = 0; i < static_cast<int>(formals_[k].size()); ++i) {
                int r = uf_[k].find(i);
                degenerate[r] = degenerate[r] || !formals_[k][i].word.empty();
            }
            std::map<int, int>& idx = cell_index_[k];
            for (const auto& [r, deg] : degenerate)
                if (!deg) {
                    idx[r] = static_cast<int>(roots[k].size());
                    roots[k].push_back(r);
                }
        }

        std::vector<std::vector<std::vector<FaceRef>>> faces(depth_ + 1);
        for (int k = 0; k <= depth_; ++k) {
            faces[k].resize(roots[k].size());
            if (k == 0) continue;
            for (int c = 0; c < static_cast<int>(roots[k].size()); ++c) {
                const FormalSimplex& rep = formals_[k][roots[k][c]];
                for (int i = 0; i <= k; ++i) {
                    int sub = uf_[k - 1].find(id_of(k - 1, y_->face_formal(rep, i)));
                    FormalSimplex nf = class_nf(k - 1, sub);
                    faces[k][c].push_back(FaceRef{nf.word, nf.cell.idx});
                }
            }
        }
        while (!faces.empty() && faces.back().empty()) faces.pop_back();
        quotient_ = std::make_shared<SimplicialSet>(std::move(faces));

        std::vector<std::vector<FormalSimplex>> images(depth_ + 1);
        for (int k = 0; k <= depth_; ++k)
            for (int c = 0; c < y_->cells(k); ++c)
                images[k].push_back(class_nf(k, uf_[k].find(id_of(k, FormalSimplex{{}, CellRef{k, c}}))));
        images.resize(y_->dim() + 1);
        projection_ = make_sset_map(y_, quotient_, std::move(images));
    }

    SSetPtr y_;
    int depth_;
    std::vector<std::vector<FormalSimplex>> formals_;
    std::vector<std::map<FormalSimplex, int>> index_;
    std::vector<UnionFind> uf_;
    std::vector<std::map<int, FormalSimplex>> nf_memo_;
    std::map<int, std::map<int, int>> cell_index_;
    SSetPtr quotient_;
    Mor projection_;
};

class SSetEngine final : public EngineContract {
public:
    EngineTag tag() const override { return EngineTag::SSet; }

    Obj initial() const override { return Obj(SimplicialSet::empty()); }
    Obj unit() const override { return Obj(SimplicialSet::standard_simplex(0)); }

    Mor identity(const Obj& x) const override { return sset_identity(x.sset_ptr()); }

    Mor compose(const Mor& g, const Mor& f) const override {
        const auto& fm = f.sset();
        const auto& gm = g.sset();
        if (!fm.cod_ptr()->same_cells(*gm.dom_ptr())) throw EngineError("compose: codomain/domain mismatch");
        std::vector<std::vector<FormalSimplex>> images(fm.dom_ptr()->dim() + 1);
        for (int k = 0; k <= fm.dom_ptr()->dim(); ++k)
            for (int c = 0; c < fm.dom_ptr()->cells(k); ++c)
                images[k].push_back(gm.apply(fm.apply_cell(CellRef{k, c})));
        return make_sset_map(fm.dom_ptr(), gm.cod_ptr(), std::move(images));
    }

    bool equal_objects(const Obj& x, const Obj& y) const override {
        return x.sset().same_cells(y.sset());
    }

    bool equal_morphisms(const Mor& f, const Mor& g) const override {
        return f.sset().dom_ptr()->same_cells(*g.sset().dom_ptr()) &&
               f.sset().cod_ptr()->same_cells(*g.sset().cod_ptr()) && f.sset().images() == g.sset().images();
    }

    Obj coproduct(const std::vector<Obj>& xs, std::vector<Mor>* injections) const override {
        int dim = -1;
        for (const auto& x : xs) dim = std::max(dim, x.sset().dim());
        std::vector<std::vector<std::vector<FaceRef>>> faces(dim + 1);
        std::vector<std::vector<int>> offsets(xs.size(), std::vector<int>(dim + 1, 0));
        for (size_t i = 0; i < xs.size(); ++i) {
            const auto& x = xs[i].sset();
            for (int k = 0; k <= x.dim(); ++k) {
                offsets[i][k] = static_cast<int>(faces[k].size());
                for (int c = 0; c < x.cells(k); ++c) {
                    std::vector<FaceRef> fs;
                    for (int t = 0; k >= 1 && t <= k; ++t) {
                        FaceRef f = x.face(CellRef{k, c}, t);
                        int tdim = k - 1 - static_cast<int>(f.word.size());
                        fs.push_back(FaceRef{f.word, f.cell + offsets[i][tdim]});
                    }
                    faces[k].push_back(std::move(fs));
                }
            }
        }
        auto sum = std::make_shared<SimplicialSet>(std::move(faces));
        if (injections) {
            injections->clear();
            for (size_t i = 0; i < xs.size(); ++i) {
                const auto& x = xs[i].sset();
                std::vector<std::vector<FormalSimplex>> images(x.dim() + 1);
                for (int k = 0; k <= x.dim(); ++k)
                    for (int c = 0; c < x.cells(k); ++c)
                        images[k].push_back(FormalSimplex{{}, CellRef{k, c + offsets[i][k]}});
                injections->push_back(make_sset_map(xs[i].sset_ptr(), sum, std::move(images)));
            }
        }
        return Obj(SSetPtr(sum));
    }

    Mor coproduct_map(const Obj& coprod, const std::vector<Mor>& legs) const override {
        const auto& sum = coprod.sset();
        std::vector<std::vector<FormalSimplex>> images(sum.dim() + 1);
        SSetPtr cod;
        for (const auto& leg : legs) {
            const auto& lm = leg.sset();
            cod = lm.cod_ptr();
            for (int k = 0; k <= lm.dom_ptr()->dim(); ++k)
                for (const auto& img : lm.images()[k]) images[k].push_back(img);
        }
        if (!cod) cod = SimplicialSet::empty();
        for (int k = 0; k <= sum.dim(); ++k)
            if (static_cast<int>(images[k].size()) != sum.cells(k))
                throw EngineError("coproduct_map: legs do not cover the coproduct");
        return make_sset_map(coprod.sset_ptr(), cod, std::move(images));
    }

    Mor coequalizer(const Mor& f, const Mor& g) const override {
        if (!f.sset().cod_ptr()->same_cells(*g.sset().cod_ptr()) ||
            !f.sset().dom_ptr()->same_cells(*g.sset().dom_ptr()))
            throw EngineError("coequalizer: not a parallel pair");
        QuotientBuilder qb(f.sset(), g.sset());
        return qb.projection();
    }

    std::optional<Mor> factor_through_epi(const Mor& e, const Mor& h) const override {
        const auto& em = e.sset();
        const auto& hm = h.sset();
        const auto& mid = *em.cod_ptr();
        std::vector<std::vector<FormalSimplex>> images(mid.dim() + 1);
        for (int k = 0; k <= mid.dim(); ++k) {
            images[k].resize(mid.cells(k), FormalSimplex{{}, CellRef{-1, -1}});
            for (int c = 0; c < mid.cells(k); ++c) {
                bool found = false;
                for (int s = 0; s < em.dom_ptr()->cells(k) && !found; ++s) {
                    const FormalSimplex& img = em.images()[k][s];
                    if (img.word.empty() && img.cell.idx == c && img.cell.dim == k) {
                        images[k][c] = hm.images()[k][s];
                        found = true;
                    }
                }
                if (!found) return std::nullopt; // e is not a cellwise epi
            }
        }
        auto m = SimplicialMap::try_make(em.cod_ptr(), hm.cod_ptr(), std::move(images));
        if (!m) return std::nullopt;
        if (!equal_morphisms(compose(*m, e), h)) return std::nullopt;
        return m;
    }

    Obj tensor_list(const std::vector<Obj>& xs) const override {
        std::vector<SSetPtr> fs;
        for (const auto& x : xs) fs.push_back(x.sset_ptr());
        return Obj(SimplicialSet::product(fs));
    }

    Mor tensor_list_mor(const std::vector<Mor>& fs) const override {
        std::vector<SSetPtr> doms, cods;
        for (const auto& f : fs) {
            doms.push_back(f.sset().dom_ptr());
            cods.push_back(f.sset().cod_ptr());
        }
        auto dom = SimplicialSet::product(doms);
        auto cod = SimplicialSet::product(cods);
        return product_map(dom, cod, [&](const std::vector<FormalSimplex>& tuple) {
            std::vector<FormalSimplex> out(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) out[i] = fs[i].sset().apply(tuple[i]);
            return out;
        });
    }

    Mor permute_factors(const std::vector<Obj>& xs, const std::vector<int>& perm) const override {
        std::vector<SSetPtr> src, dst(xs.size());
        for (const auto& x : xs) src.push_back(x.sset_ptr());
        for (size_t i = 0; i < xs.size(); ++i) dst[perm[i]] = src[i];
        auto dom = SimplicialSet::product(src);
        auto cod = SimplicialSet::product(dst);
        return product_map(dom, cod, [&](const std::vector<FormalSimplex>& tuple) {
            std::vector<FormalSimplex> out(tuple.size());
            for (size_t i = 0; i < tuple.size(); ++i) out[perm[i]] = tuple[i];
            return out;
        });
    }

    bool is_mono(const Mor& f) const override {
        const auto& fm = f.sset();
        for (int k = 0; k <= fm.dom_ptr()->dim(); ++k) {
            std::set<FormalSimplex> seen;
            for (const auto& img : fm.images()[k]) {
                if (!img.word.empty()) return false; // nondegenerate cell collapses
                if (!seen.insert(img).second) return false;
            }
        }
        return true;
    }

    bool is_epi(const Mor& f) const override {
        const auto& fm = f.sset();
        const auto& cod = *fm.cod_ptr();
        std::vector<std::set<int>> hit(cod.dim() + 1);
        for (int k = 0; k <= fm.dom_ptr()->dim(); ++k)
            for (const auto& img : fm.images()[k]) hit[img.cell.dim].insert(img.cell.idx);
        for (int k = 0; k <= cod.dim(); ++k)
            if (static_cast<int>(hit[k].size()) != cod.cells(k)) return false;
        return true;
    }

    std::optional<Mor> find_isomorphism(const Obj& xo, const Obj& yo) const override {
        return sset_find_isomorphism_constrained(xo.sset_ptr(), yo.sset_ptr(),
                                                 [](int, int, int) { return true; });
    }

    std::optional<Mor> lift_through_mono(const Mor& m, const Mor& h) const override {
        const auto& mm = m.sset();
        const auto& hm = h.sset();
        const auto& mid = *mm.cod_ptr();
        // m is mono, so cells map to distinct nondegenerate cells.
        std::vector<std::vector<int>> pre(mid.dim() + 1);
        for (int k = 0; k <= mid.dim(); ++k) pre[k].assign(mid.cells(k), -1);
        for (int k = 0; k <= mm.dom_ptr()->dim(); ++k)
            for (int c = 0; c < mm.dom_ptr()->cells(k); ++c) {
                const auto& img = mm.images()[k][c];
                if (!img.word.empty() || pre[k][img.cell.idx] >= 0) return std::nullopt;
                pre[k][img.cell.idx] = c;
            }
        std::vector<std::vector<FormalSimplex>> images(hm.dom_ptr()->dim() + 1);
        for (int k = 0; k <= hm.dom_ptr()->dim(); ++k)
            for (int c = 0; c < hm.dom_ptr()->cells(k); ++c) {
                const auto& img = hm.images()[k][c];
                int p = pre[img.cell.dim][img.cell.idx];
                if (p < 0) return std::nullopt; // h does not factor through m
                images[k].push_back(FormalSimplex{img.word, CellRef{img.cell.dim, p}});
            }
        auto lift = SimplicialMap::try_make(hm.dom_ptr(), mm.dom_ptr(), std::move(images));
        if (!lift) return std::nullopt;
        if (!equal_morphisms(compose(m, *lift), h)) return std::nullopt;
        return lift;
    }

    bool supports_subobjects() const override { return true; }

    Subobject full_subobject(const Obj& x) const override {
        Subobject s;
        s.ambient = x;
        s.indices.resize(x.sset().dim() + 1);
        for (int k = 0; k <= x.sset().dim(); ++k)
            for (int c = 0; c < x.sset().cells(k); ++c) s.indices[k].push_back(c);
        return s;
    }

    Subobject image_subobject(const Mor& f) const override {
        const auto& fm = f.sset();
        const auto& cod = *fm.cod_ptr();
        std::vector<std::set<int>> keep(cod.dim() + 1);
        for (int k = 0; k <= fm.dom_ptr()->dim(); ++k)
            for (const auto& img : fm.images()[k]) keep[img.cell.dim].insert(img.cell.idx);
        // Face closure.
        bool changed = true;
        while (changed) {
            changed = false;
            for (int k = 1; k <= cod.dim(); ++k)
                for (int c : std::vector<int>(keep[k].begin(), keep[k].end()))
                    for (int i = 0; i <= k; ++i) {
                        const FaceRef& fr = cod.face(CellRef{k, c}, i);
                        int tdim = k - 1 - static_cast<int>(fr.word.size());
                        if (keep[tdim].insert(fr.cell).second) changed = true;
                    }
        }
        Subobject s;
        s.ambient = f.cod();
        s.indices.resize(cod.dim() + 1);
        for (int k = 0; k <= cod.dim(); ++k) s.indices[k].assign(keep[k].begin(), keep[k].end());
        return s;
    }

    Subobject sub_union(const Subobject& a, const Subobject& b) const override {
        Subobject s;
        s.ambient = a.ambient;
        s.indices.resize(std::max(a.indices.size(), b.indices.size()));
        for (size_t k = 0; k < s.indices.size(); ++k) {
            std::vector<int> av = k < a.indices.size() ? a.indices[k] : std::vector<int>{};
            std::vector<int> bv = k < b.indices.size() ? b.indices[k] : std::vector<int>{};
            std::set_union(av.begin(), av.end(), bv.begin(), bv.end(), std::back_inserter(s.indices[k]));
        }
        return s;
    }

    Subobject sub_intersection(const Subobject& a, const Subobject& b) const override {
        Subobject s;
        s.ambient = a.ambient;
        s.indices.resize(std::max(a.indices.size(), b.indices.size()));
        for (size_t k = 0; k < s.indices.size(); ++k) {
            std::vector<int> av = k < a.indices.size() ? a.indices[k] : std::vector<int>{};
            std::vector<int> bv = k < b.indices.size() ? b.indices[k] : std::vector<int>{};
            std::set_intersection(av.begin(), av.end(), bv.begin(), bv.end(),
                                  std::back_inserter(s.indices[k]));
        }
        return s;
    }

    Mor sub_inclusion(const Subobject& s) const override {
        const auto& amb = s.ambient.sset();
        std::vector<std::vector<int>> local(amb.dim() + 1);
        for (int k = 0; k <= amb.dim(); ++k) {
            local[k].assign(amb.cells(k), -1);
            if (k < static_cast<int>(s.indices.size()))
                for (int i = 0; i < static_cast<int>(s.indices[k].size()); ++i)
                    local[k][s.indices[k][i]] = i;
        }
        std::vector<std::vector<std::vector<FaceRef>>> faces(amb.dim() + 1);
        for (int k = 0; k <= amb.dim(); ++k) {
            if (k >= static_cast<int>(s.indices.size())) continue;
            faces[k].resize(s.indices[k].size());
            if (k == 0) continue;
            for (size_t c = 0; c < s.indices[k].size(); ++c)
                for (int i = 0; i <= k; ++i) {
                    const FaceRef& fr = amb.face(CellRef{k, s.indices[k][c]}, i);
                    int tdim = k - 1 - static_cast<int>(fr.word.size());
                    int lc = local[tdim][fr.cell];
                    if (lc < 0) throw EngineError("sub_inclusion: subobject not face-closed");
                    faces[k][c].push_back(FaceRef{fr.word, lc});
                }
        }
        while (!faces.empty() && faces.back().empty()) faces.pop_back();
        auto sub = std::make_shared<SimplicialSet>(std::move(faces));
        std::vector<std::vector<FormalSimplex>> images(sub->dim() + 1);
        for (int k = 0; k <= sub->dim(); ++k)
            for (size_t c = 0; c < s.indices[k].size(); ++c)
                images[k].push_back(FormalSimplex{{}, CellRef{k, s.indices[k][c]}});
        return make_sset_map(sub, s.ambient.sset_ptr(), std::move(images));
    }

    Mor corestrict(const Mor& f, const Subobject& s) const override {
        Mor inc = sub_inclusion(s);
        const auto& amb = s.ambient.sset();
        std::vector<std::vector<int>> local(amb.dim() + 1);
        for (int k = 0; k <= amb.dim(); ++k) {
            local[k].assign(amb.cells(k), -1);
            if (k < static_cast<int>(s.indices.size()))
                for (int i = 0; i < static_cast<int>(s.indices[k].size()); ++i)
                    local[k][s.indices[k][i]] = i;
        }
        const auto& fm = f.sset();
        std::vector<std::vector<FormalSimplex>> images(fm.dom_ptr()->dim() + 1);
        for (int k = 0; k <= fm.dom_ptr()->dim(); ++k)
            for (const auto& img : fm.images()[k]) {
                int lc = local[img.cell.dim][img.cell.idx];
                if (lc < 0) throw EngineError("corestrict: image leaves the subobject");
                images[k].push_back(FormalSimplex{img.word, CellRef{img.cell.dim, lc}});
            }
        return make_sset_map(fm.dom_ptr(), inc.sset().dom_ptr(), std::move(images));
    }

    bool is_cartesian() const override { return true; }

    Mor product_projection(const Obj& prod, int i) const override {
        const auto& p = prod.sset();
        auto meta = p.product_meta();
        if (!meta) throw EngineError("product_projection: no product structure");
        std::vector<std::vector<FormalSimplex>> images(p.dim() + 1);
        for (int k = 0; k <= p.dim(); ++k)
            for (int c = 0; c < p.cells(k); ++c) images[k].push_back(meta->tuples[k][c][i]);
        return make_sset_map(prod.sset_ptr(), meta->factors[i], std::move(images));
    }

    Mor pair_into_product(const Obj& prod, const std::vector<Mor>& legs) const override {
        const auto& p = prod.sset();
        auto meta = p.product_meta();
        if (!meta || meta->factors.size() != legs.size())
            throw EngineError("pair_into_product: arity mismatch");
        auto dom = legs.empty() ? SimplicialSet::standard_simplex(0) : legs[0].sset().dom_ptr();
        std::vector<std::vector<FormalSimplex>> images(dom->dim() + 1);
        for (int k = 0; k <= dom->dim(); ++k)
            for (int c = 0; c < dom->cells(k); ++c) {
                std::vector<FormalSimplex> tuple(legs.size());
                for (size_t i = 0; i < legs.size(); ++i) tuple[i] = legs[i].sset().apply_cell(CellRef{k, c});
                images[k].push_back(normalize_tuple(*meta, tuple));
            }
        return make_sset_map(dom, prod.sset_ptr(), std::move(images));
    }

private:
    template <typename F>
    Mor product_map(const SSetPtr& dom, const SSetPtr& cod, F&& component_images) const {
        auto dmeta = dom->product_meta();
        auto cmeta = cod->product_meta();
        if (!dmeta || !cmeta) throw EngineError("product_map: missing product structure");
        std::vector<std::vector<FormalSimplex>> images(dom->dim() + 1);
        for (int k = 0; k <= dom->dim(); ++k)
            for (int c = 0; c < dom->cells(k); ++c)
                images[k].push_back(normalize_tuple(*cmeta, component_images(dmeta->tuples[k][c])));
        return make_sset_map(dom, cod, std::move(images));
    }

    // Joint normal form of a tuple of formal simplices inside a product.
    static FormalSimplex normalize_tuple(const SSetProductMeta& meta, std::vector<FormalSimplex> t) {
        DegWord w;
        for (;;) {
            // Intersection of word sets; largest element first keeps w normal.
            int common = -1;
            if (!t.empty()) {
                for (int cand : t[0].word) {
                    bool in_all = true;
                    for (size_t i = 1; i < t.size() && in_all; ++i)
                        in_all = std::find(t[i].word.begin(), t[i].word.end(), cand) != t[i].word.end();
                    if (in_all) {
                        common = cand;
                        break; // words are decreasing, first hit is the largest
                    }
                }
            }
            if (common < 0) break;
            w.push_back(common);
            for (size_t i = 0; i < t.size(); ++i) t[i] = meta.factors[i]->face_formal(t[i], common);
        }
        auto it = meta.index.find(t);
        if (it == meta.index.end()) throw EngineError("product: tuple not found");
        return FormalSimplex{w, it->second};
    }

};

bool iso_extend(const SimplicialSet& x, const SimplicialSet& y,
                const std::function<bool(int, int, int)>& allowed,
                std::vector<std::vector<int>>& assign, std::vector<std::vector<bool>>& used, int k,
                int c) {
    if (k > x.dim()) return true;
    if (c >= x.cells(k)) return iso_extend(x, y, allowed, assign, used, k + 1, 0);
    for (int cand = 0; cand < y.cells(k); ++cand) {
        if (used[k][cand] || !allowed(k, c, cand)) continue;
        bool ok = true;
        for (int i = 0; k >= 1 && i <= k && ok; ++i) {
            FaceRef fx = x.face(CellRef{k, c}, i);
            int tdim = k - 1 - static_cast<int>(fx.word.size());
            FaceRef fy = y.face(CellRef{k, cand}, i);
            ok = fx.word == fy.word && fy.cell == assign[tdim][fx.cell];
        }
        if (!ok) continue;
        assign[k][c] = cand;
        used[k][cand] = true;
        if (iso_extend(x, y, allowed, assign, used, k, c + 1)) return true;
        assign[k][c] = -1;
        used[k][cand] = false;
    }
    return false;
}

} // namespace

std::optional<Mor> sset_find_isomorphism_constrained(
    const SSetPtr& x, const SSetPtr& y, const std::function<bool(int, int, int)>& allowed) {
    if (x->dim() != y->dim()) return std::nullopt;
    for (int k = 0; k <= x->dim(); ++k)
        if (x->cells(k) != y->cells(k)) return std::nullopt;
    std::vector<std::vector<int>> assign(x->dim() + 1);
    std::vector<std::vector<bool>> used(x->dim() + 1);
    for (int k = 0; k <= x->dim(); ++k) {
        assign[k].assign(x->cells(k), -1);
        used[k].assign(x->cells(k), false);
    }
    if (!iso_extend(*x, *y, allowed, assign, used, 0, 0)) return std::nullopt;
    std::vector<std::vector<FormalSimplex>> images(x->dim() + 1);
    for (int k = 0; k <= x->dim(); ++k)
        for (int c = 0; c < x->cells(k); ++c)
            images[k].push_back(FormalSimplex{{}, CellRef{k, assign[k][c]}});
    return SimplicialMap::try_make(x, y, std::move(images));
}

const EngineContract& sset_engine() {
    static SSetEngine e;
    return e;
}

} // namespace pplab
