#include "pplab/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace pplab {

bool word_is_normal(const DegWord& w) {
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] <= w[i + 1]) return false;
    return w.empty() || w.back() >= 0;
}

DegWord word_push_degeneracy(const DegWord& w, int i) {
    // s_i s_j = s_{j+1} s_i for i <= j.
    DegWord out;
    size_t t = 0;
    while (t < w.size() && i <= w[t]) out.push_back(w[t++] + 1);
    out.push_back(i);
    while (t < w.size()) out.push_back(w[t++]);
    return out;
}

DegWord word_compose(const DegWord& v, const DegWord& w) {
    DegWord out = w;
    for (size_t t = v.size(); t-- > 0;) out = word_push_degeneracy(out, v[t]);
    return out;
}

SimplicialSet::SimplicialSet(std::vector<std::vector<std::vector<FaceRef>>> faces)
    : faces_(std::move(faces)) {
    while (!faces_.empty() && faces_.back().empty()) faces_.pop_back();
    validate();
}

int SimplicialSet::total_cells() const {
    int n = 0;
    for (const auto& level : faces_) n += static_cast<int>(level.size());
    return n;
}

long long SimplicialSet::euler_characteristic() const {
    long long chi = 0;
    for (int k = 0; k <= dim(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(cells(k));
    return chi;
}

FormalSimplex SimplicialSet::face_formal(const FormalSimplex& x, int i) const {
    // Move d_i through the degeneracy word:
    //   d_i s_j = s_{j-1} d_i (i < j), = id (i = j, j+1), = s_j d_{i-1} (i > j+1).
    DegWord out;
    int cur = i;
    for (size_t t = 0; t < x.word.size(); ++t) {
        int j = x.word[t];
        if (cur < j) {
            out.push_back(j - 1);
        } else if (cur == j || cur == j + 1) {
            DegWord rest(x.word.begin() + t + 1, x.word.end());
            DegWord merged = out;
            merged.insert(merged.end(), rest.begin(), rest.end());
            return FormalSimplex{std::move(merged), x.cell};
        } else {
            out.push_back(j);
            --cur;
        }
    }
    if (x.cell.dim == 0) throw EngineError("face of a vertex");
    const FaceRef& f = face(x.cell, cur);
    CellRef target{x.cell.dim - 1 - static_cast<int>(f.word.size()), f.cell};
    return FormalSimplex{word_compose(out, f.word), target};
}

FormalSimplex SimplicialSet::degenerate_formal(const FormalSimplex& x, int i) {
    return FormalSimplex{word_push_degeneracy(x.word, i), x.cell};
}

int SimplicialSet::vertex_of(const FormalSimplex& x, int i) const {
    FormalSimplex cur = x;
    int deg = cur.degree();
    while (deg > i) {
        cur = face_formal(cur, deg);
        --deg;
    }
    while (deg > 0) {
        cur = face_formal(cur, 0);
        --deg;
    }
    return cur.cell.idx;
}

std::vector<int> SimplicialSet::vertex_tuple(const CellRef& c) const {
    std::vector<int> t(c.dim + 1);
    for (int i = 0; i <= c.dim; ++i) t[i] = vertex_of(FormalSimplex{{}, c}, i);
    return t;
}

namespace {
// Strictly decreasing r-subsets of {0..k-1}, lex order on the decreasing vectors.
std::vector<DegWord> decreasing_words(int k, int r) {
    std::vector<DegWord> out;
    if (r == 0) {
        out.push_back({});
        return out;
    }
    if (r > k) return out;
    std::vector<int> idx(r);
    std::iota(idx.begin(), idx.end(), 0); // ascending combination
    for (;;) {
        DegWord w(idx.rbegin(), idx.rend());
        out.push_back(std::move(w));
        int i = r - 1;
        while (i >= 0 && idx[i] == k - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}
} // namespace

std::vector<FormalSimplex> SimplicialSet::formals(int k) const {
    std::vector<FormalSimplex> out;
    for (int d = std::min(k, dim()); d >= 0; --d) {
        auto words = decreasing_words(k, k - d);
        for (int c = 0; c < cells(d); ++c)
            for (const auto& w : words) out.push_back(FormalSimplex{w, CellRef{d, c}});
    }
    return out;
}

void SimplicialSet::validate() const {
    for (int k = 1; k <= dim(); ++k) {
        for (int c = 0; c < cells(k); ++c) {
            const auto& fs = faces_[k][c];
            if (static_cast<int>(fs.size()) != k + 1) throw EngineError("sset: face count != dim+1");
            for (const auto& f : fs) {
                int tdim = k - 1 - static_cast<int>(f.word.size());
                if (tdim < 0 || tdim > dim() || f.cell < 0 || f.cell >= cells(tdim))
                    throw EngineError("sset: face target out of range");
                if (!word_is_normal(f.word)) throw EngineError("sset: face word not in normal form");
                for (size_t l = 0; l < f.word.size(); ++l) {
                    // s applied innermost-first: entry l bounded by target dim + slack.
                    int bound = tdim + static_cast<int>(f.word.size() - 1 - l);
                    if (f.word[l] < 0 || f.word[l] > bound) throw EngineError("sset: face word out of range");
                }
            }
        }
    }
    // Simplicial identities d_i d_j = d_{j-1} d_i for i < j on every cell.
    for (int k = 2; k <= dim(); ++k)
        for (int c = 0; c < cells(k); ++c)
            for (int j = 1; j <= k; ++j)
                for (int i = 0; i < j; ++i) {
                    FormalSimplex x{{}, CellRef{k, c}};
                    FormalSimplex a = face_formal(face_formal(x, j), i);
                    FormalSimplex b = face_formal(face_formal(x, i), j - 1);
                    if (!(a == b)) {
                        std::ostringstream os;
                        os << "sset: simplicial identity fails at dim " << k << " cell " << c << " (i=" << i
                           << ", j=" << j << ")";
                        throw EngineError(os.str());
                    }
                }
}

SSetPtr SimplicialSet::empty() { return std::make_shared<SimplicialSet>(); }

int SimplicialSet::comb_rank(const std::vector<int>& subset, int m) {
    // Lex rank among ascending (k+1)-subsets of {0..m}.
    auto choose = [](int n, int r) {
        if (r < 0 || r > n) return 0LL;
        long long v = 1;
        for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
        return v;
    };
    int k1 = static_cast<int>(subset.size());
    long long rank = 0;
    int prev = -1;
    for (int i = 0; i < k1; ++i) {
        for (int x = prev + 1; x < subset[i]; ++x) rank += choose(m - x, k1 - i - 1);
        prev = subset[i];
    }
    return static_cast<int>(rank);
}

std::vector<int> SimplicialSet::comb_unrank(int rank, int k1, int m) {
    auto choose = [](int n, int r) {
        if (r < 0 || r > n) return 0LL;
        long long v = 1;
        for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
        return v;
    };
    std::vector<int> out;
    int x = 0;
    for (int i = 0; i < k1; ++i) {
        for (;; ++x) {
            long long block = choose(m - x, k1 - i - 1);
            if (rank < block) break;
            rank -= static_cast<int>(block);
        }
        out.push_back(x++);
    }
    return out;
}

namespace {

using KeepTables = std::vector<std::vector<int>>;

// Build a simplicial set whose dim-k cells are a subset of the (k+1)-subsets
// of {0..m}; keep[k] maps comb rank -> local index (or -1).
SSetPtr simplex_like(int m, const KeepTables& keep) {
    std::vector<std::vector<std::vector<FaceRef>>> faces(keep.size());
    for (int k = 0; k < static_cast<int>(keep.size()); ++k) {
        int count = 0;
        for (int v : keep[k])
            if (v >= 0) ++count;
        faces[k].resize(count);
        if (k == 0) continue;
        for (int rank = 0; rank < static_cast<int>(keep[k].size()); ++rank) {
            if (keep[k][rank] < 0) continue;
            auto subset = SimplicialSet::comb_unrank(rank, k + 1, m);
            std::vector<FaceRef> fs;
            for (int i = 0; i <= k; ++i) {
                std::vector<int> sub = subset;
                sub.erase(sub.begin() + i);
                int r = SimplicialSet::comb_rank(sub, m);
                if (keep[k - 1][r] < 0) throw EngineError("simplex_like: not face-closed");
                fs.push_back(FaceRef{{}, keep[k - 1][r]});
            }
            faces[k][keep[k][rank]] = std::move(fs);
        }
    }
    while (!faces.empty()) {
        bool empty_top = faces.back().empty();
        if (empty_top)
            faces.pop_back();
        else
            break;
    }
    return std::make_shared<SimplicialSet>(std::move(faces));
}

std::vector<std::vector<int>> full_keep(int m) {
    auto choose = [](int n, int r) {
        long long v = 1;
        for (int i = 0; i < r; ++i) v = v * (n - i) / (i + 1);
        return static_cast<int>(v);
    };
    std::vector<std::vector<int>> keep(m + 1);
    for (int k = 0; k <= m; ++k) {
        keep[k].resize(choose(m + 1, k + 1));
        std::iota(keep[k].begin(), keep[k].end(), 0);
    }
    return keep;
}

void renumber(KeepTables& keep) {
    for (auto& level : keep) {
        int next = 0;
        for (auto& v : level)
            if (v >= 0) v = next++;
    }
}

KeepTables boundary_keep(int m) {
    auto keep = full_keep(m);
    keep[m][0] = -1;
    renumber(keep);
    return keep;
}

KeepTables horn_keep(int m, int k) {
    if (m < 1) throw EngineError("horn: m must be >= 1");
    if (k < 0 || k > m) throw EngineError("horn: face index out of range");
    auto keep = full_keep(m);
    keep[m][0] = -1;
    std::vector<int> opposite;
    for (int v = 0; v <= m; ++v)
        if (v != k) opposite.push_back(v);
    keep[m - 1][SimplicialSet::comb_rank(opposite, m)] = -1;
    renumber(keep);
    return keep;
}

// Inclusion of the keep-table subcomplex into the full Delta^m: local cells
// map to the cell with the same comb rank.
Mor inclusion_from_keep(int m, const KeepTables& keep) {
    auto sub = simplex_like(m, keep);
    auto big = SimplicialSet::standard_simplex(m);
    std::vector<std::vector<FormalSimplex>> images(sub->dim() + 1);
    for (int d = 0; d <= sub->dim(); ++d) {
        images[d].resize(sub->cells(d));
        for (int rank = 0; rank < static_cast<int>(keep[d].size()); ++rank)
            if (keep[d][rank] >= 0) images[d][keep[d][rank]] = FormalSimplex{{}, CellRef{d, rank}};
    }
    return make_sset_map(sub, big, std::move(images));
}

} // namespace

SSetPtr SimplicialSet::standard_simplex(int m) { return simplex_like(m, full_keep(m)); }

SSetPtr SimplicialSet::boundary(int m) {
    if (m == 0) return empty();
    return simplex_like(m, boundary_keep(m));
}

SSetPtr SimplicialSet::horn(int m, int k) { return simplex_like(m, horn_keep(m, k)); }

SSetPtr SimplicialSet::discrete(int n) {
    std::vector<std::vector<std::vector<FaceRef>>> faces(1);
    faces[0].resize(n);
    return std::make_shared<SimplicialSet>(std::move(faces));
}

SSetPtr SimplicialSet::circle() {
    std::vector<std::vector<std::vector<FaceRef>>> faces(2);
    faces[0].resize(1);
    faces[1].push_back({FaceRef{{}, 0}, FaceRef{{}, 0}});
    return std::make_shared<SimplicialSet>(std::move(faces));
}

namespace {

// Common degeneracy directions of a tuple; joint normal form extraction.
std::vector<int> common_degeneracies(const std::vector<FormalSimplex>& tuple) {
    if (tuple.empty()) return {};
    std::vector<int> common(tuple[0].word.begin(), tuple[0].word.end());
    std::sort(common.begin(), common.end());
    for (size_t i = 1; i < tuple.size(); ++i) {
        std::vector<int> w(tuple[i].word.begin(), tuple[i].word.end());
        std::sort(w.begin(), w.end());
        std::vector<int> inter;
        std::set_intersection(common.begin(), common.end(), w.begin(), w.end(),
                              std::back_inserter(inter));
        common = std::move(inter);
        if (common.empty()) break;
    }
    return common;
}

} // namespace

SSetPtr SimplicialSet::product(const std::vector<SSetPtr>& factors) {
    auto meta = std::make_shared<SSetProductMeta>();
    meta->factors = factors;

    int dim_sum = 0;
    bool any_empty = false;
    for (const auto& f : factors) {
        dim_sum += std::max(f->dim(), 0);
        if (f->total_cells() == 0) any_empty = true;
    }
    if (any_empty || factors.empty()) {
        auto base = factors.empty() ? standard_simplex(0) : empty();
        auto copy = std::make_shared<SimplicialSet>(*base);
        copy->set_product_meta(meta);
        return copy;
    }

    std::vector<std::vector<std::vector<FormalSimplex>>> tuples(dim_sum + 1);
    // Enumerate jointly nondegenerate tuples per degree.
    for (int k = 0; k <= dim_sum; ++k) {
        std::vector<std::vector<FormalSimplex>> per_factor;
        for (const auto& f : factors) per_factor.push_back(f->formals(k));
        std::vector<FormalSimplex> cur(factors.size());
        std::vector<int> pick(factors.size(), 0);
        // Odometer over per-factor formals with joint-nondegeneracy filter.
        int level = 0;
        while (level >= 0) {
            if (level == static_cast<int>(factors.size())) {
                if (common_degeneracies(cur).empty()) tuples[k].push_back(cur);
                --level;
                continue;
            }
            if (pick[level] >= static_cast<int>(per_factor[level].size())) {
                pick[level] = 0;
                --level;
                continue;
            }
            cur[level] = per_factor[level][pick[level]++];
            ++level;
        }
    }
    while (!tuples.empty() && tuples.back().empty()) tuples.pop_back();

    for (int k = 0; k < static_cast<int>(tuples.size()); ++k)
        for (int c = 0; c < static_cast<int>(tuples[k].size()); ++c)
            meta->index[tuples[k][c]] = CellRef{k, c};
    meta->tuples = tuples;

    // Faces: componentwise face then joint renormalization.
    std::vector<std::vector<std::vector<FaceRef>>> faces(tuples.size());
    for (int k = 0; k < static_cast<int>(tuples.size()); ++k) {
        faces[k].resize(tuples[k].size());
        if (k == 0) continue;
        for (int c = 0; c < static_cast<int>(tuples[k].size()); ++c) {
            for (int i = 0; i <= k; ++i) {
                std::vector<FormalSimplex> t(factors.size());
                for (size_t l = 0; l < factors.size(); ++l)
                    t[l] = factors[l]->face_formal(tuples[k][c][l], i);
                DegWord w;
                for (;;) {
                    auto common = common_degeneracies(t);
                    if (common.empty()) break;
                    int j = common.back(); // largest first keeps the word decreasing
                    w.push_back(j);
                    for (size_t l = 0; l < factors.size(); ++l) t[l] = factors[l]->face_formal(t[l], j);
                }
                auto it = meta->index.find(t);
                if (it == meta->index.end()) throw EngineError("product: face tuple missing");
                faces[k][c].push_back(FaceRef{w, it->second.idx});
            }
        }
    }
    auto obj = std::make_shared<SimplicialSet>(std::move(faces));
    obj->set_product_meta(meta);
    return obj;
}

SimplicialMap::SimplicialMap(SSetPtr dom, SSetPtr cod, std::vector<std::vector<FormalSimplex>> images)
    : dom_(std::move(dom)), cod_(std::move(cod)), images_(std::move(images)) {
    validate();
}

std::optional<Mor> SimplicialMap::try_make(SSetPtr dom, SSetPtr cod,
                                           std::vector<std::vector<FormalSimplex>> images) {
    try {
        return Mor(std::make_shared<SimplicialMap>(std::move(dom), std::move(cod), std::move(images)));
    } catch (const EngineError&) {
        return std::nullopt;
    }
}

void SimplicialMap::validate() const {
    if (static_cast<int>(images_.size()) < dom_->dim() + 1)
        throw EngineError("sset map: image table too short");
    for (int k = 0; k <= dom_->dim(); ++k) {
        if (static_cast<int>(images_[k].size()) != dom_->cells(k))
            throw EngineError("sset map: image table size mismatch");
        for (int c = 0; c < dom_->cells(k); ++c) {
            const auto& img = images_[k][c];
            if (img.degree() != k) throw EngineError("sset map: image degree mismatch");
            if (img.cell.dim < 0 || img.cell.dim > cod_->dim() || img.cell.idx < 0 ||
                img.cell.idx >= cod_->cells(img.cell.dim))
                throw EngineError("sset map: image cell out of range");
            if (!word_is_normal(img.word)) throw EngineError("sset map: image word not normal");
        }
    }
    // Compatibility with faces (degeneracies follow formally).
    for (int k = 1; k <= dom_->dim(); ++k)
        for (int c = 0; c < dom_->cells(k); ++c)
            for (int i = 0; i <= k; ++i) {
                FormalSimplex lhs = apply(dom_->face_formal(FormalSimplex{{}, CellRef{k, c}}, i));
                FormalSimplex rhs = cod_->face_formal(images_[k][c], i);
                if (!(lhs == rhs)) throw EngineError("sset map: does not commute with faces");
            }
}

FormalSimplex SimplicialMap::apply(const FormalSimplex& x) const {
    const FormalSimplex& img = images_[x.cell.dim][x.cell.idx];
    return FormalSimplex{word_compose(x.word, img.word), img.cell};
}

Mor make_sset_map(SSetPtr dom, SSetPtr cod, std::vector<std::vector<FormalSimplex>> images) {
    return Mor(std::make_shared<SimplicialMap>(std::move(dom), std::move(cod), std::move(images)));
}

Mor sset_identity(const SSetPtr& x) {
    std::vector<std::vector<FormalSimplex>> images(x->dim() + 1);
    for (int k = 0; k <= x->dim(); ++k)
        for (int c = 0; c < x->cells(k); ++c) images[k].push_back(FormalSimplex{{}, CellRef{k, c}});
    return make_sset_map(x, x, std::move(images));
}

Mor sset_constant_map(const SSetPtr& dom, const SSetPtr& cod, int vertex) {
    std::vector<std::vector<FormalSimplex>> images(dom->dim() + 1);
    for (int k = 0; k <= dom->dim(); ++k) {
        DegWord w(k);
        for (int i = 0; i < k; ++i) w[i] = k - 1 - i;
        for (int c = 0; c < dom->cells(k); ++c)
            images[k].push_back(FormalSimplex{w, CellRef{0, vertex}});
    }
    return make_sset_map(dom, cod, std::move(images));
}

Mor horn_inclusion(int m, int k) { return inclusion_from_keep(m, horn_keep(m, k)); }

Mor boundary_inclusion(int m) {
    if (m == 0) {
        // The empty subcomplex of a point.
        return make_sset_map(SimplicialSet::empty(), SimplicialSet::standard_simplex(0), {});
    }
    return inclusion_from_keep(m, boundary_keep(m));
}

std::optional<Mor> map_to_simplex(const SSetPtr& dom, int m, const std::vector<int>& vertex_images) {
    if (static_cast<int>(vertex_images.size()) != dom->cells(0))
        throw EngineError("map_to_simplex: one image per vertex required");
    auto cod = SimplicialSet::standard_simplex(m);
    std::vector<std::vector<FormalSimplex>> images(dom->dim() + 1);
    for (int k = 0; k <= dom->dim(); ++k)
        for (int c = 0; c < dom->cells(k); ++c) {
            auto verts = dom->vertex_tuple(CellRef{k, c});
            std::vector<int> imgs;
            for (int v : verts) imgs.push_back(vertex_images[v]);
            if (!std::is_sorted(imgs.begin(), imgs.end())) return std::nullopt;
            // Normalize the monotone tuple to (word, strict subset).
            std::vector<int> t = imgs;
            DegWord w;
            for (;;) {
                int pos = -1;
                for (size_t i = 0; i + 1 < t.size(); ++i)
                    if (t[i] == t[i + 1]) {
                        pos = static_cast<int>(i);
                        break;
                    }
                if (pos < 0) break;
                t.erase(t.begin() + pos + 1);
                w = word_push_degeneracy(w, pos);
            }
            images[k].push_back(
                FormalSimplex{w, CellRef{static_cast<int>(t.size()) - 1, SimplicialSet::comb_rank(t, m)}});
        }
    return SimplicialMap::try_make(dom, cod, std::move(images));
}

EsigmaModel esigma_nerve(const FinGroupPtr& group, int truncation) {
    if (truncation < 0) throw EngineError("esigma: negative truncation");
    int n = group->order();

    // Nondegenerate k-cells: tuples (g_0..g_k) with distinct consecutive
    // entries, ordered lexicographically.
    std::vector<std::vector<std::vector<int>>> cells(truncation + 1);
    std::vector<std::map<std::vector<int>, int>> index(truncation + 1);
    for (int k = 0; k <= truncation; ++k) {
        std::vector<int> t(k + 1, 0);
        for (;;) {
            bool ok = true;
            for (int i = 0; i < k; ++i)
                if (t[i] == t[i + 1]) ok = false;
            if (ok) {
                index[k][t] = static_cast<int>(cells[k].size());
                cells[k].push_back(t);
            }
            int i = k;
            while (i >= 0 && t[i] == n - 1) t[i--] = 0;
            if (i < 0) break;
            ++t[i];
        }
    }

    auto tuple_to_formal = [&](std::vector<int> t) {
        DegWord w;
        for (;;) {
            int pos = -1;
            for (size_t i = 0; i + 1 < t.size(); ++i)
                if (t[i] == t[i + 1]) {
                    pos = static_cast<int>(i);
                    break;
                }
            if (pos < 0) break;
            t.erase(t.begin() + pos + 1);
            w = word_push_degeneracy(w, pos);
        }
        int d = static_cast<int>(t.size()) - 1;
        return FormalSimplex{w, CellRef{d, index[d].at(t)}};
    };

    std::vector<std::vector<std::vector<FaceRef>>> faces(truncation + 1);
    for (int k = 0; k <= truncation; ++k) {
        faces[k].resize(cells[k].size());
        if (k == 0) continue;
        for (int c = 0; c < static_cast<int>(cells[k].size()); ++c)
            for (int i = 0; i <= k; ++i) {
                auto t = cells[k][c];
                t.erase(t.begin() + i);
                auto f = tuple_to_formal(std::move(t));
                faces[k][c].push_back(FaceRef{f.word, f.cell.idx});
            }
    }
    auto space = std::make_shared<SimplicialSet>(std::move(faces));

    EsigmaModel model;
    model.space = space;
    for (int g = 0; g < n; ++g) {
        std::vector<std::vector<FormalSimplex>> images(truncation + 1);
        for (int k = 0; k <= truncation; ++k)
            for (const auto& t : cells[k]) {
                std::vector<int> gt(t.size());
                for (size_t i = 0; i < t.size(); ++i) gt[i] = group->mult(g, t[i]);
                images[k].push_back(FormalSimplex{{}, CellRef{k, index[k].at(gt)}});
            }
        model.action.push_back(make_sset_map(space, space, std::move(images)));
    }
    return model;
}

} // namespace pplab
