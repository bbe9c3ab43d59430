#pragma once

#include "dynmwm/graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace dynmwm {

// One record per line: `op u v w seq` with op in {i, d}. Blank lines and lines
// starting with '#' are skipped.
std::string format_event(const UpdateEvent& ev);
UpdateEvent parse_event(const std::string& line);

std::vector<UpdateEvent> read_trace(std::istream& in);
std::vector<UpdateEvent> read_trace_file(const std::string& path);
void write_trace(std::ostream& out, const std::vector<UpdateEvent>& events);
void write_trace_file(const std::string& path, const std::vector<UpdateEvent>& events);

// Replays the events on an empty graph, throwing UpdateError at the first illegal one.
DynamicGraph replay(const std::vector<UpdateEvent>& events);

}  // namespace dynmwm
