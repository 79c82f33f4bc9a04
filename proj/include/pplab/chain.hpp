#pragma once

#include "pplab/engine.hpp"
#include "pplab/fpgroup.hpp"

#include <map>
#include <memory>
#include <vector>

namespace pplab {

class ChainComplex;
using ChainPtr = std::shared_ptr<const ChainComplex>;

// Metadata for tensor products: generators of each total degree are tuples of
// factor generators, enumerated in a canonical order.
struct ChainTensorMeta {
    std::vector<ChainPtr> factors;
    // For degree d (index d - lo): list of (per-factor degree, per-factor gen).
    struct Summand {
        std::vector<int> degrees;
        std::vector<int> gens;
        auto operator<=>(const Summand&) const = default;
    };
    std::vector<std::vector<Summand>> tuples;
    std::vector<std::map<Summand, int>> index;
    int lo = 0;
};

// Bounded complex of finitely presented abelian groups; the differential
// lowers degree and is given by an integer matrix on generators.
class ChainComplex {
public:
    ChainComplex() : lo_(0), hi_(-1) {} // zero complex
    ChainComplex(int lo, std::vector<FPAbelianGroup> groups, std::vector<IntMatrix> diffs);

    bool is_zero_complex() const { return lo_ > hi_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    const FPAbelianGroup& group(int d) const;
    // Differential C_d -> C_{d-1}; zero matrix outside the stored range.
    IntMatrix diff(int d) const;
    int gens(int d) const { return (d < lo_ || d > hi_) ? 0 : group(d).gens(); }

    bool equal_to(const ChainComplex& o) const;
    Int euler_characteristic() const;

    const std::shared_ptr<const ChainTensorMeta>& tensor_meta() const { return tensor_meta_; }
    void set_tensor_meta(std::shared_ptr<const ChainTensorMeta> m) { tensor_meta_ = std::move(m); }

    // [Z -id-> Z] in degrees 1 and 0.
    static ChainPtr interval();
    // Z (or a given group) concentrated in one degree.
    static ChainPtr concentrated(int degree, FPAbelianGroup g);
    static ChainPtr zero() { return std::make_shared<ChainComplex>(); }

private:
    void validate() const;

    int lo_, hi_;
    std::vector<FPAbelianGroup> groups_;
    std::vector<IntMatrix> diffs_; // diffs_[i] : C_{lo+i} -> C_{lo+i-1}
    std::shared_ptr<const ChainTensorMeta> tensor_meta_;
};

class ChainMap {
public:
    ChainMap(ChainPtr dom, ChainPtr cod, std::map<int, IntMatrix> mats);

    const ChainPtr& dom_ptr() const { return dom_; }
    const ChainPtr& cod_ptr() const { return cod_; }
    // Component at degree d (zero matrix when absent).
    IntMatrix at(int d) const;

    static std::optional<Mor> try_make(ChainPtr dom, ChainPtr cod, std::map<int, IntMatrix> mats);

private:
    void validate() const;
    ChainPtr dom_, cod_;
    std::map<int, IntMatrix> mats_;
};

Mor make_chain_map(ChainPtr dom, ChainPtr cod, std::map<int, IntMatrix> mats);

// Homology in ascending degrees lo..hi of the complex.
std::vector<GroupType> chain_homology(const ChainComplex& c);

// Mapping cone of a chain map; acyclic iff the map is a homology iso.
ChainPtr mapping_cone(const Mor& f);

} // namespace pplab
