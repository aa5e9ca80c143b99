#include "treelab/trace.hpp"

#include <charconv>
#include <sstream>

#include "treelab/format.hpp"

namespace treelab {

std::string format_number(double value) {
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return ec == std::errc{} ? std::string(buffer, end) : std::string("nan");
}

std::string format_fixed(double value, int decimals) {
    char buffer[128];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::fixed, decimals);
    return ec == std::errc{} ? std::string(buffer, end) : format_number(value);
}

std::string format_trace_line(const TraceEvent& event) {
    std::ostringstream line;
    line << event.bootstrap << ' ';
    if (event.test_position) {
        line << *event.test_position;
    } else {
        line << '*';
    }
    line << ' ' << event.node << ' ' << event.depth << ' ' << event.train_count << ' ' << event.test_count;
    if (event.split) {
        line << " split " << event.split->attribute << ' '
             << (event.split->kind == ConditionKind::NumericLE ? "le" : "eq") << ' '
             << format_number(event.split->value);
    } else {
        line << " leaf " << event.leaf_class;
    }
    return line.str();
}

void write_trace(std::ostream& out, const TraceLog& trace, Algorithm algorithm) {
    out << "# algorithm=" << algorithm_tag(algorithm) << '\n';
    for (const auto& event : trace) {
        out << format_trace_line(event) << '\n';
    }
}

}  // namespace treelab
