#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "treelab/metrics.hpp"
#include "treelab/splitcore.hpp"

namespace treelab {

/// One node exploration. `node` names the node by its branch path from the
/// root: "r" is the root, each following '0'/'1' takes the invalid/valid child.
struct TraceEvent {
    std::size_t bootstrap = 0;
    std::optional<std::size_t> test_position;  // set for lazy paths only
    std::string node;
    std::size_t depth = 0;
    std::size_t train_count = 0;
    std::size_t test_count = 0;
    std::optional<Condition> split;  // nullopt for a leaf decision
    ClassIndex leaf_class = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using TraceLog = std::vector<TraceEvent>;

inline constexpr const char* kRootNode = "r";

inline std::string child_node(const std::string& parent, bool valid) {
    return parent + (valid ? '1' : '0');
}

/// `<bootstrap> <test|*> <node> <depth> <n_train> <n_test> split <attr> le|eq <value>`
/// or `... leaf <class>`.
std::string format_trace_line(const TraceEvent& event);

/// Writes a `# algorithm=<tag>` header line followed by one line per event.
void write_trace(std::ostream& out, const TraceLog& trace, Algorithm algorithm);

}  // namespace treelab
