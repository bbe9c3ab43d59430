#include "dynmwm/trace.hpp"

#include <fstream>
#include <sstream>

namespace dynmwm {

std::string format_event(const UpdateEvent& ev) {
    std::ostringstream os;
    os << (ev.kind == UpdateKind::insert ? 'i' : 'd') << ' ' << ev.edge.u << ' ' << ev.edge.v << ' '
       << format_rational(ev.edge.w) << ' ' << ev.seq;
    return os.str();
}

UpdateEvent parse_event(const std::string& line) {
    std::istringstream is(line);
    std::string op, w;
    unsigned long long u = 0, v = 0, seq = 0;
    if (!(is >> op >> u >> v >> w >> seq)) throw std::invalid_argument("malformed trace record: '" + line + "'");
    std::string extra;
    if (is >> extra) throw std::invalid_argument("trailing fields in trace record: '" + line + "'");
    UpdateEvent ev;
    if (op == "i") ev.kind = UpdateKind::insert;
    else if (op == "d") ev.kind = UpdateKind::erase;
    else throw std::invalid_argument("unknown trace op '" + op + "'");
    ev.edge = WeightedEdge(static_cast<Vertex>(u), static_cast<Vertex>(v), parse_rational(w));
    ev.seq = seq;
    return ev;
}

std::vector<UpdateEvent> read_trace(std::istream& in) {
    std::vector<UpdateEvent> out;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back(parse_event(line));
    }
    return out;
}

std::vector<UpdateEvent> read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file " + path);
    return read_trace(in);
}

void write_trace(std::ostream& out, const std::vector<UpdateEvent>& events) {
    for (const auto& ev : events) out << format_event(ev) << '\n';
}

void write_trace_file(const std::string& path, const std::vector<UpdateEvent>& events) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace file " + path);
    write_trace(out, events);
}

DynamicGraph replay(const std::vector<UpdateEvent>& events) {
    DynamicGraph g;
    for (const auto& ev : events) apply_update(g, ev);
    return g;
}

}  // namespace dynmwm
