#pragma once

#include <vector>

#include "hyperquot/mask.hpp"

namespace hyperquot {

// Finite group presented by its multiplication table. Order is capped so
// that the translation family over any subgroup stays within the carrier
// limit of the hyperspace machinery.
inline constexpr int kGroupOrderLimit = 6;

class CayleyTable {
public:
    // Validates closure, associativity, identity, and inverses.
    static CayleyTable from_table(std::vector<std::vector<int>> table);
    // Z_n under addition.
    static CayleyTable cyclic(int n);
    // The symmetric group on three letters.
    static CayleyTable symmetric3();

    int order() const { return n_; }
    int op(int a, int b) const {
        return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    int identity() const { return identity_; }
    int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }

    bool is_subgroup(Mask h) const;
    bool is_normal(Mask h) const;  // requires is_subgroup(h)
    // Left cosets gH, deduplicated, sorted by mask. Requires a subgroup.
    std::vector<Mask> left_cosets(Mask h) const;

private:
    CayleyTable(std::vector<std::vector<int>> table, int n, int identity,
                std::vector<int> inverse)
        : table_(std::move(table)), inverse_(std::move(inverse)), n_(n),
          identity_(identity) {}

    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
    int n_ = 0;
    int identity_ = 0;
};

}  // namespace hyperquot
