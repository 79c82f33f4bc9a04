#pragma once

#include "pplab/engine.hpp"
#include "pplab/group.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace pplab {

// Degeneracy word in Eilenberg-Zilber normal form: strictly decreasing
// indices j1 > j2 > ... > jr, denoting the operator s_{j1} o ... o s_{jr}.
using DegWord = std::vector<int>;

// Normal form of s_i o s_w.
DegWord word_push_degeneracy(const DegWord& w, int i);
// Normal form of s_v o s_w.
DegWord word_compose(const DegWord& v, const DegWord& w);
bool word_is_normal(const DegWord& w);

struct CellRef {
    int dim = 0;
    int idx = 0;
    auto operator<=>(const CellRef&) const = default;
};

// s_w applied to a nondegenerate simplex; the unique normal form of a simplex.
struct FormalSimplex {
    DegWord word;
    CellRef cell;

    int degree() const { return static_cast<int>(word.size()) + cell.dim; }
    bool nondegenerate() const { return word.empty(); }
    auto operator<=>(const FormalSimplex&) const = default;
};

struct FaceRef {
    DegWord word;
    int cell = 0; // index at dimension (parent dim - 1 - |word|)
    auto operator<=>(const FaceRef&) const = default;
};

class SimplicialSet;
using SSetPtr = std::shared_ptr<const SimplicialSet>;

// Metadata kept by product objects so projections, pairing and factor
// permutations stay exact cell-level operations.
struct SSetProductMeta {
    std::vector<SSetPtr> factors;
    // tuples[k][c] = the component formal simplices of product cell (k, c).
    std::vector<std::vector<std::vector<FormalSimplex>>> tuples;
    std::map<std::vector<FormalSimplex>, CellRef> index;
};

// Finitely generated simplicial set: nondegenerate simplices with faces
// recorded in Eilenberg-Zilber normal form.
class SimplicialSet {
public:
    SimplicialSet() = default;
    // faces[k][c] lists k+1 face refs of cell c at dimension k (k >= 1).
    explicit SimplicialSet(std::vector<std::vector<std::vector<FaceRef>>> faces);

    int dim() const { return static_cast<int>(faces_.size()) - 1; }
    int cells(int k) const {
        return (k >= 0 && k <= dim()) ? static_cast<int>(faces_[k].size()) : 0;
    }
    int total_cells() const;
    long long euler_characteristic() const;
    const FaceRef& face(const CellRef& c, int i) const { return faces_[c.dim][c.idx][i]; }

    // d_i applied to a formal simplex, renormalized.
    FormalSimplex face_formal(const FormalSimplex& x, int i) const;
    static FormalSimplex degenerate_formal(const FormalSimplex& x, int i);
    // i-th vertex (0 <= i <= degree) of a formal simplex.
    int vertex_of(const FormalSimplex& x, int i) const;
    std::vector<int> vertex_tuple(const CellRef& c) const;

    // All degree-k simplices in a fixed canonical order (nondegenerate first).
    std::vector<FormalSimplex> formals(int k) const;

    void validate() const; // structural invariants + simplicial identities

    bool same_cells(const SimplicialSet& o) const { return faces_ == o.faces_; }

    const std::shared_ptr<const SSetProductMeta>& product_meta() const { return product_meta_; }
    void set_product_meta(std::shared_ptr<const SSetProductMeta> m) { product_meta_ = std::move(m); }

    // --- builders ---
    static SSetPtr empty();
    static SSetPtr standard_simplex(int m);
    static SSetPtr boundary(int m);
    static SSetPtr horn(int m, int k);
    static SSetPtr discrete(int n);
    static SSetPtr circle(); // one vertex, one nondegenerate loop edge
    static SSetPtr product(const std::vector<SSetPtr>& factors);

    // Combination helpers for standard cells: cells of dim k in Delta^m are
    // the (k+1)-subsets of {0..m} in lex order.
    static int comb_rank(const std::vector<int>& subset, int m);
    static std::vector<int> comb_unrank(int rank, int k1, int m);

private:
    std::vector<std::vector<std::vector<FaceRef>>> faces_;
    std::shared_ptr<const SSetProductMeta> product_meta_;
};

class SimplicialMap {
public:
    SimplicialMap(SSetPtr dom, SSetPtr cod, std::vector<std::vector<FormalSimplex>> images);

    static std::optional<Mor> try_make(SSetPtr dom, SSetPtr cod,
                                       std::vector<std::vector<FormalSimplex>> images);

    const SSetPtr& dom_ptr() const { return dom_; }
    const SSetPtr& cod_ptr() const { return cod_; }
    const std::vector<std::vector<FormalSimplex>>& images() const { return images_; }

    FormalSimplex apply_cell(const CellRef& c) const { return images_[c.dim][c.idx]; }
    FormalSimplex apply(const FormalSimplex& x) const;

private:
    void validate() const;
    SSetPtr dom_, cod_;
    std::vector<std::vector<FormalSimplex>> images_;
};

Mor make_sset_map(SSetPtr dom, SSetPtr cod, std::vector<std::vector<FormalSimplex>> images);
Mor sset_identity(const SSetPtr& x);
// Everything collapses onto degeneracies of the given vertex of cod.
Mor sset_constant_map(const SSetPtr& dom, const SSetPtr& cod, int vertex);

// Inclusion of the standard subcomplexes into Delta^m.
Mor horn_inclusion(int m, int k);
Mor boundary_inclusion(int m);

// Map into a standard simplex determined by a vertex assignment; fails if a
// cell's vertex tuple is not monotone.
std::optional<Mor> map_to_simplex(const SSetPtr& dom, int m, const std::vector<int>& vertex_images);

// Isomorphism search restricted by a cell predicate allowed(dim, cx, cy).
std::optional<Mor> sset_find_isomorphism_constrained(
    const SSetPtr& x, const SSetPtr& y, const std::function<bool(int, int, int)>& allowed);

// Nerve-of-group model of ESigma_n truncated at dimension N, with the free
// left diagonal action.
struct EsigmaModel {
    SSetPtr space;
    std::vector<Mor> action; // one automorphism per group element
};
EsigmaModel esigma_nerve(const FinGroupPtr& group, int truncation);

} // namespace pplab
