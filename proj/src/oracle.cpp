#include "carpentry/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace carpentry {

OracleResult oracle_front(const DesignSpace& space, const Libraries& libs, ObjectiveMode mode,
                          const OracleLimits& limits)
{
    if (space.cardinality() > limits.designs) throw std::length_error("design space too large for the oracle");
    const auto enumeration = enumerate_variants(space, limits.designs);

    OracleResult result;
    Archive archive;
    for (const auto& design : enumeration.designs) {
        if (!validate_design(design, libs).empty()) continue;
        ++result.designs;

        std::vector<std::vector<std::vector<PackedStock>>> per_family;
        for (const auto& [key, parts] : group_parts(design, libs)) {
            if (parts.size() > limits.max_family_parts) throw std::length_error("too many parts for the oracle");
            const auto stocks = libs.family_stocks(key.family, key.material);
            const Length kerf = libs.tool(cutting_tool(stocks.front())).kerf;
            Traversal ids;
            for (const auto& p : parts) ids.push_back(p.id);
            std::sort(ids.begin(), ids.end());
            std::vector<Traversal> orders;
            do {
                orders.push_back(ids);
            } while (std::next_permutation(ids.begin(), ids.end()));
            per_family.push_back(pack_fragments(parts, orders, stocks, kerf));
        }

        std::vector<std::size_t> idx(per_family.size(), 0);
        while (true) {
            std::vector<PackedStock> stocks;
            for (std::size_t f = 0; f < per_family.size(); ++f) {
                const auto& frag = per_family[f][idx[f]];
                stocks.insert(stocks.end(), frag.begin(), frag.end());
            }
            ++result.arrangements;
            const auto layout = term_layout(design.id, std::move(stocks), libs);
            for (auto& p : all_order_plans(layout, libs, mode, limits.order_combinations)) {
                ++result.plans;
                auto id = plan_fingerprint(p.plan);
                archive.offer(Solution{design, std::move(p.plan), p.cost, std::move(id), {}});
            }

            std::size_t f = per_family.size();
            while (f > 0 && ++idx[f - 1] == per_family[f - 1].size()) idx[--f] = 0;
            if (f == 0) break;
        }
    }
    result.front = archive.sorted();
    return result;
}

} // namespace carpentry
