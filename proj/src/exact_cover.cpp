#include "cobweb/exact_cover.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "cobweb/errors.hpp"

namespace cobweb {

namespace {

// Node 0 is the root, nodes 1..items are column headers, the rest are option
// cells laid out option by option.
struct Links {
    std::vector<std::uint32_t> left, right, up, down, column;
    std::vector<std::uint32_t> option_of;  // option index per cell, unused for headers
    std::vector<std::uint32_t> length;     // per header

    Links(std::size_t items, const std::vector<std::vector<std::uint32_t>>& options) {
        std::size_t cells = 1 + items;
        for (const auto& o : options) cells += o.size();
        left.resize(cells);
        right.resize(cells);
        up.resize(cells);
        down.resize(cells);
        column.resize(cells);
        option_of.resize(cells, 0);
        length.assign(items + 1, 0);
        for (std::uint32_t i = 0; i <= items; ++i) {
            left[i] = i == 0 ? static_cast<std::uint32_t>(items) : i - 1;
            right[i] = i == items ? 0 : i + 1;
            up[i] = down[i] = column[i] = i;
        }
        std::uint32_t next = static_cast<std::uint32_t>(items + 1);
        for (std::size_t oi = 0; oi < options.size(); ++oi) {
            const auto& o = options[oi];
            const std::uint32_t first = next;
            for (std::size_t j = 0; j < o.size(); ++j) {
                const std::uint32_t cell = next++;
                const std::uint32_t col = o[j] + 1;
                if (o[j] >= items) throw std::out_of_range("exact cover option names item outside the universe");
                column[cell] = col;
                option_of[cell] = static_cast<std::uint32_t>(oi);
                up[cell] = up[col];
                down[cell] = col;
                down[up[col]] = cell;
                up[col] = cell;
                ++length[col];
                left[cell] = j == 0 ? cell : cell - 1;
                right[cell] = first;
                if (j > 0) right[cell - 1] = cell;
                left[first] = cell;
            }
        }
    }

    void cover(std::uint32_t c) {
        right[left[c]] = right[c];
        left[right[c]] = left[c];
        for (std::uint32_t i = down[c]; i != c; i = down[i])
            for (std::uint32_t j = right[i]; j != i; j = right[j]) {
                down[up[j]] = down[j];
                up[down[j]] = up[j];
                --length[column[j]];
            }
    }

    void uncover(std::uint32_t c) {
        for (std::uint32_t i = up[c]; i != c; i = up[i])
            for (std::uint32_t j = left[i]; j != i; j = left[j]) {
                ++length[column[j]];
                down[up[j]] = j;
                up[down[j]] = j;
            }
        right[left[c]] = c;
        left[right[c]] = c;
    }

    void select(std::uint32_t row) {
        for (std::uint32_t j = right[row]; j != row; j = right[j]) cover(column[j]);
    }

    void unselect(std::uint32_t row) {
        for (std::uint32_t j = left[row]; j != row; j = left[j]) uncover(column[j]);
    }

    // 0 when every column is covered.
    std::uint32_t choose() const {
        std::uint32_t best = 0;
        std::uint32_t best_len = UINT32_MAX;
        for (std::uint32_t c = right[0]; c != 0; c = right[c]) {
            if (length[c] < best_len) {
                best = c;
                best_len = length[c];
                if (best_len == 0) break;
            }
        }
        return best;
    }
};

struct Searcher {
    Searcher(const Links& l, const ExactCover::Options& o, std::atomic<std::uint64_t>& n, std::atomic<bool>& a)
        : links(l), opts(o), shared_nodes(n), aborted(a) {}

    Links links;
    const ExactCover::Options& opts;
    std::atomic<std::uint64_t>& shared_nodes;
    std::atomic<bool>& aborted;

    std::uint64_t count = 0;
    std::uint64_t local_nodes = 0;
    std::uint64_t pending_nodes = 0;
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> solutions;
    bool truncated = false;

    void tick() {
        ++local_nodes;
        if (++pending_nodes == 1024) flush();
    }

    void flush() {
        const std::uint64_t total = shared_nodes.fetch_add(pending_nodes) + pending_nodes;
        pending_nodes = 0;
        if (total > opts.node_cap) aborted.store(true);
    }

    void record() {
        ++count;
        if (solutions.size() < opts.collect_limit) {
            auto s = stack;
            std::sort(s.begin(), s.end());
            solutions.push_back(std::move(s));
        } else if (opts.collect_limit > 0) {
            truncated = true;
        }
    }

    void search() {
        if (aborted.load(std::memory_order_relaxed)) return;
        const std::uint32_t c = links.choose();
        if (c == 0) {
            record();
            return;
        }
        if (links.length[c] == 0) return;
        links.cover(c);
        for (std::uint32_t r = links.down[c]; r != c; r = links.down[r]) {
            tick();
            stack.push_back(links.option_of[r]);
            links.select(r);
            search();
            links.unselect(r);
            stack.pop_back();
            if (aborted.load(std::memory_order_relaxed)) break;
        }
        links.uncover(c);
    }
};

}  // namespace

ExactCover::ExactCover(std::size_t items, std::vector<std::vector<std::uint32_t>> options)
    : items_(items), options_(std::move(options)) {}

ExactCover::Result ExactCover::solve(const Options& opts) const {
    const Links prototype(items_, options_);
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> aborted{false};

    Result result;
    const std::uint32_t root = prototype.choose();
    if (root == 0) {
        result.count = 1;
        if (opts.collect_limit > 0) result.solutions.emplace_back();
        return result;
    }

    std::vector<std::uint32_t> branches;
    for (std::uint32_t r = prototype.down[root]; r != root; r = prototype.down[r]) branches.push_back(r);

    struct BranchResult {
        std::uint64_t count = 0;
        std::vector<std::vector<std::size_t>> solutions;
        bool truncated = false;
    };
    std::vector<BranchResult> per_branch(branches.size());
    std::atomic<std::size_t> next_branch{0};

    auto worker = [&]() {
        Searcher s(prototype, opts, nodes, aborted);
        s.links.cover(root);
        while (!aborted.load()) {
            const std::size_t b = next_branch.fetch_add(1);
            if (b >= branches.size()) break;
            s.count = 0;
            s.solutions.clear();
            s.truncated = false;
            const std::uint32_t row = branches[b];
            s.tick();
            s.stack.push_back(s.links.option_of[row]);
            s.links.select(row);
            s.search();
            s.links.unselect(row);
            s.stack.pop_back();
            per_branch[b] = BranchResult{s.count, std::move(s.solutions), s.truncated};
        }
        s.flush();
    };

    const std::size_t workers = std::max<std::size_t>(1, std::min(opts.workers, branches.size()));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    result.nodes = nodes.load();
    if (aborted.load() || result.nodes > opts.node_cap)
        throw ResourceError("cap-nodes", opts.node_cap, "exact cover search aborted after " +
                                                            std::to_string(result.nodes) + " nodes");

    for (auto& b : per_branch) {
        result.count += b.count;
        for (auto& s : b.solutions) {
            if (result.solutions.size() < opts.collect_limit)
                result.solutions.push_back(std::move(s));
            else
                result.truncated = true;
        }
        result.truncated = result.truncated || b.truncated;
    }
    return result;
}

}  // namespace cobweb
