#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cobweb {

// Dancing-links Algorithm X over a fixed item universe 0..items-1. Columns are
// chosen by minimum remaining candidates, ties broken by lowest item index,
// and options are tried in input order, so the search order is canonical.
class ExactCover {
public:
    struct Options {
        std::size_t workers = 1;
        // Solutions kept per search; the count stays exact past this.
        std::size_t collect_limit = 0;
        std::uint64_t node_cap = 100'000'000;
    };

    struct Result {
        std::uint64_t count = 0;
        std::uint64_t nodes = 0;
        // Option indices per solution, each sorted ascending, in search order.
        std::vector<std::vector<std::size_t>> solutions;
        bool truncated = false;  // more than collect_limit solutions exist
    };

    ExactCover(std::size_t items, std::vector<std::vector<std::uint32_t>> options);

    // Throws ResourceError("cap-nodes") when the search exceeds node_cap.
    Result solve(const Options& opts) const;

    std::size_t items() const { return items_; }
    std::size_t option_count() const { return options_.size(); }

private:
    std::size_t items_;
    std::vector<std::vector<std::uint32_t>> options_;
};

}  // namespace cobweb
