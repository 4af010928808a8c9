#include "hyperquot/group.hpp"

#include <algorithm>

#include "hyperquot/errors.hpp"

namespace hyperquot {

CayleyTable CayleyTable::from_table(std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(table.size());
    if (n < 1) throw InvalidInput("group: empty table");
    if (n > kGroupOrderLimit) throw InstanceTooLarge("group: order above limit");
    for (const auto& row : table) {
        if (row.size() != static_cast<std::size_t>(n))
            throw InvalidInput("group: ragged table");
        for (int v : row)
            if (v < 0 || v >= n) throw InvalidInput("group: entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const std::size_t ua = static_cast<std::size_t>(a);
                const std::size_t ub = static_cast<std::size_t>(b);
                const std::size_t uc = static_cast<std::size_t>(c);
                const int ab_c =
                    table[static_cast<std::size_t>(table[ua][ub])][uc];
                const int a_bc =
                    table[ua][static_cast<std::size_t>(table[ub][uc])];
                if (ab_c != a_bc) throw InvalidInput("group: not associative");
            }
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n; ++a) {
            if (table[static_cast<std::size_t>(e)][static_cast<std::size_t>(a)] != a ||
                table[static_cast<std::size_t>(a)][static_cast<std::size_t>(e)] != a) {
                ok = false;
                break;
            }
        }
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0) throw InvalidInput("group: no identity element");
    std::vector<int> inverse(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
                    identity &&
                table[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)] ==
                    identity) {
                inverse[static_cast<std::size_t>(a)] = b;
                break;
            }
        }
        if (inverse[static_cast<std::size_t>(a)] < 0)
            throw InvalidInput("group: element without inverse");
    }
    return CayleyTable(std::move(table), n, identity, std::move(inverse));
}

CayleyTable CayleyTable::cyclic(int n) {
    if (n < 1) throw InvalidInput("group: order must be positive");
    if (n > kGroupOrderLimit) throw InstanceTooLarge("group: order above limit");
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                        std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return from_table(std::move(table));
}

CayleyTable CayleyTable::symmetric3() {
    // Permutations of {0,1,2} in one-line notation, composed left-then-right.
    const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                             {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    auto index_of = [&](const int p[3]) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2])
                return i;
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
            table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
                index_of(comp);
        }
    return from_table(std::move(table));
}

bool CayleyTable::is_subgroup(Mask h) const {
    if (h == 0 || !is_subset(h, full_mask(n_))) return false;
    if (!contains(h, identity_)) return false;
    bool ok = true;
    for_each_bit(h, [&](int a) {
        if (!contains(h, inverse(a))) ok = false;
        for_each_bit(h, [&](int b) {
            if (!contains(h, op(a, b))) ok = false;
        });
    });
    return ok;
}

bool CayleyTable::is_normal(Mask h) const {
    if (!is_subgroup(h)) return false;
    for (int g = 0; g < n_; ++g) {
        Mask gh = 0, hg = 0;
        for_each_bit(h, [&](int a) {
            gh |= bit(op(g, a));
            hg |= bit(op(a, g));
        });
        if (gh != hg) return false;
    }
    return true;
}

std::vector<Mask> CayleyTable::left_cosets(Mask h) const {
    if (!is_subgroup(h)) throw InvalidInput("group: not a subgroup");
    std::vector<Mask> cosets;
    for (int g = 0; g < n_; ++g) {
        Mask gh = 0;
        for_each_bit(h, [&](int a) { gh |= bit(op(g, a)); });
        cosets.push_back(gh);
    }
    std::sort(cosets.begin(), cosets.end());
    cosets.erase(std::unique(cosets.begin(), cosets.end()), cosets.end());
    return cosets;
}

}  // namespace hyperquot
