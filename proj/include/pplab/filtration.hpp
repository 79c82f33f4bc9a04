#pragma once

#include "pplab/pushout_product.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pplab {

// Tuples over {0 -> 1 -> 2} per coordinate, grouped into blocks of sizes n_i.
using Tuple = std::vector<std::uint8_t>;

// Downward-closed subset of the product poset prod_i 3^{n_i}.
class DCPoset {
public:
    DCPoset(MultiIndex n, std::vector<Tuple> tuples);

    static DCPoset full(const MultiIndex& n);
    static DCPoset downward_closure(const MultiIndex& n, const std::vector<Tuple>& generators);

    const MultiIndex& n() const { return n_; }
    const std::vector<Tuple>& tuples() const { return tuples_; }
    bool contains(const Tuple& t) const;
    std::vector<Tuple> maximal_tuples() const;
    bool closed_under_block_permutations() const;

private:
    MultiIndex n_;
    std::vector<Tuple> tuples_; // sorted
};

// The Sigma_n-orbit of tuples with k_i 2's and (n_i - k_i) 1's per block.
std::vector<Tuple> orbit_cells(const MultiIndex& n, const MultiIndex& k);

// Colimit of the (x)-labeled diagram restricted to a downward-closed poset,
// via iterated coproduct + coequalizer.
struct QColimit {
    Obj obj;
    std::vector<Mor> cocone; // one leg per tuple, in DCPoset order
};
QColimit q_colimit(const DCPoset& c, const std::vector<Mor>& v0, const std::vector<Mor>& v1);

// Mono-mode realization of the same colimit as a subobject of X2^{(x)n}.
Subobject q_subobject(const DCPoset& c, const std::vector<Mor>& v0, const std::vector<Mor>& v1);

// The map into the ambient tensor power labeled by a tuple.
Mor tuple_label_map(const std::vector<Mor>& v0, const std::vector<Mor>& v1, const MultiIndex& n,
                    const Tuple& t);

// m_k := Sigma_n .x_{Sigma_{n-k} x Sigma_k} (v0^{pp n-k} pp v1^{pp k}).
EquivariantArrow mk_map(const std::vector<Mor>& v0, const std::vector<Mor>& v1, const MultiIndex& n,
                        const MultiIndex& k);

enum class FiltrationMode { FullComposite, Kappa };

struct FiltrationStep {
    MultiIndex k;
    std::vector<Tuple> orbit;
    // Cells of each stage after the step, recorded for exact replay.
    Subobject stage_after;
};

struct FiltrationCertificate {
    EngineTag engine = EngineTag::FinSet;
    FiltrationMode mode = FiltrationMode::FullComposite;
    MultiIndex n = MultiIndex::single(1);
    std::vector<Mor> v0, v1;
    bool mono_mode = true;
    Subobject initial_stage;
    std::vector<FiltrationStep> steps;
    Subobject final_stage;

    int expected_step_count() const;
};

// Decomposition of (v1 v0)^{pp n} as a composition of pushouts of the m_k.
FiltrationCertificate decompose_composite_power(const std::vector<Mor>& v0, const std::vector<Mor>& v1,
                                                const MultiIndex& n);

// Decomposition of kappa : dom((v1 v0)^{pp n}) u_{dom(v0^{pp n})} X1^{(x)n} -> X2^{(x)n},
// steps for all k != 0.
FiltrationCertificate decompose_kappa(const std::vector<Mor>& v0, const std::vector<Mor>& v1,
                                      const MultiIndex& n);

struct CertificateVerdict {
    bool pass = true;
    std::string failure;
    int steps_replayed = 0;
};

// Re-executes every pushout, checks each square is cocartesian, the step
// count, and that the replayed composite hits the directly computed target.
CertificateVerdict verify_certificate(const FiltrationCertificate& c);

} // namespace pplab
