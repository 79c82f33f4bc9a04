#pragma once

#include "pplab/engine.hpp"

#include <memory>
#include <vector>

namespace pplab {

// Finite set {0, ..., size-1}. Objects built as products keep their factor
// list around so projections / pairing / factor permutations stay exact.
class FinSetObj {
public:
    explicit FinSetObj(int size) : size_(size) {
        if (size < 0) throw EngineError("negative set size");
    }

    int size() const { return size_; }

    bool is_product() const { return !factors_.empty(); }
    const std::vector<std::shared_ptr<const FinSetObj>>& factors() const { return factors_; }

    // Mixed-radix encoding, first factor most significant.
    int tuple_to_index(const std::vector<int>& t) const;
    std::vector<int> index_to_tuple(int ix) const;

    static std::shared_ptr<const FinSetObj> make(int size) { return std::make_shared<FinSetObj>(size); }
    static std::shared_ptr<const FinSetObj> make_product(std::vector<std::shared_ptr<const FinSetObj>> factors);

private:
    int size_;
    std::vector<std::shared_ptr<const FinSetObj>> factors_;
};

class FinSetMap {
public:
    FinSetMap(std::shared_ptr<const FinSetObj> dom, std::shared_ptr<const FinSetObj> cod,
              std::vector<int> table);

    const std::shared_ptr<const FinSetObj>& dom_ptr() const { return dom_; }
    const std::shared_ptr<const FinSetObj>& cod_ptr() const { return cod_; }
    const std::vector<int>& table() const { return table_; }
    int operator()(int x) const { return table_[x]; }

private:
    std::shared_ptr<const FinSetObj> dom_, cod_;
    std::vector<int> table_;
};

Mor make_finset_map(std::shared_ptr<const FinSetObj> dom, std::shared_ptr<const FinSetObj> cod,
                    std::vector<int> table);

bool finset_is_iso(const Mor& f);

} // namespace pplab
