#include "sparsec/power/cdf_parser.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <queue>
#include <sstream>
#include <vector>

namespace sparsec {

ParseError::ParseError(int line_no, int cb, int ce, const std::string& what)
    : CdfError("line " + std::to_string(line_no) + ", columns " +
               std::to_string(cb) + "-" + std::to_string(ce) + ": " + what),
      line(line_no),
      col_begin(cb),
      col_end(ce) {}

namespace {

std::string trimmed(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

// 1-based inclusive column slice, padded with blanks past the line end.
std::string field(const std::string& line, int col_begin, int col_end) {
  if (static_cast<int>(line.size()) < col_begin) return "";
  const int len =
      std::min(col_end, static_cast<int>(line.size())) - col_begin + 1;
  return trimmed(std::string_view(line).substr(col_begin - 1, len));
}

int int_field(const std::string& line, int line_no, int cb, int ce,
              const char* what) {
  const std::string raw = field(line, cb, ce);
  if (raw.empty()) {
    throw ParseError(line_no, cb, ce, std::string("missing ") + what);
  }
  char* end = nullptr;
  const long value = std::strtol(raw.c_str(), &end, 10);
  if (end == raw.c_str() || *end != '\0') {
    throw ParseError(line_no, cb, ce,
                     std::string("expected integer ") + what + ", got '" + raw + "'");
  }
  return static_cast<int>(value);
}

double double_field(const std::string& line, int line_no, int cb, int ce,
                    const char* what, bool required) {
  const std::string raw = field(line, cb, ce);
  if (raw.empty()) {
    if (!required) return 0.0;
    throw ParseError(line_no, cb, ce, std::string("missing ") + what);
  }
  char* end = nullptr;
  const double value = std::strtod(raw.c_str(), &end);
  if (end == raw.c_str() || *end != '\0') {
    throw ParseError(line_no, cb, ce,
                     std::string("expected number ") + what + ", got '" + raw + "'");
  }
  return value;
}

bool is_sentinel(const std::string& line) {
  return trimmed(line).rfind("-999", 0) == 0;
}

void check_connected(const PowerNetwork& net) {
  if (net.buses.empty()) return;
  std::vector<bool> seen(net.buses.size(), false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const int at = frontier.front();
    frontier.pop();
    for (const Branch& br : net.branches) {
      const int other = br.from == at ? br.to : br.to == at ? br.from : -1;
      if (other >= 0 && !seen[other]) {
        seen[other] = true;
        ++reached;
        frontier.push(other);
      }
    }
  }
  if (reached != net.buses.size()) {
    throw DisconnectedNetwork("network graph is not connected (" +
                              std::to_string(reached) + " of " +
                              std::to_string(net.buses.size()) +
                              " buses reachable from the first)");
  }
}

}  // namespace

PowerNetwork parse_cdf(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string current;
    std::istringstream stream{std::string(text)};
    while (std::getline(stream, current)) lines.push_back(current);
  }
  if (lines.empty()) throw MissingSection("empty file");

  PowerNetwork net;
  const double base_mva = [&] {
    const std::string raw = field(lines[0], 32, 37);
    if (raw.empty()) return 100.0;
    char* end = nullptr;
    const double value = std::strtod(raw.c_str(), &end);
    return end != raw.c_str() && value > 0.0 ? value : 100.0;
  }();
  net.base_mva = base_mva;

  std::size_t at = 0;
  const auto find_section = [&](const char* tag) {
    for (std::size_t i = at; i < lines.size(); ++i) {
      if (lines[i].find(tag) != std::string::npos) {
        at = i + 1;
        return;
      }
    }
    throw MissingSection(std::string("section '") + tag + "' not found");
  };

  find_section("BUS DATA FOLLOWS");
  int slack_seen = 0;
  bool closed = false;
  for (; at < lines.size(); ++at) {
    const std::string& line = lines[at];
    if (is_sentinel(line)) {
      closed = true;
      ++at;
      break;
    }
    if (trimmed(line).empty()) continue;
    const int line_no = static_cast<int>(at) + 1;
    Bus bus;
    bus.id = int_field(line, line_no, 1, 4, "bus number");
    if (net.bus_position(bus.id) >= 0) {
      throw ParseError(line_no, 1, 4,
                       "duplicate bus number " + std::to_string(bus.id));
    }
    const int type_code = int_field(line, line_no, 25, 26, "bus type");
    switch (type_code) {
      case 0:
      case 1:
        bus.type = BusType::PQ;
        break;
      case 2:
        bus.type = BusType::PV;
        break;
      case 3:
        bus.type = BusType::Slack;
        break;
      default:
        throw ParseError(line_no, 25, 26,
                         "unknown bus type code " + std::to_string(type_code));
    }
    bus.base_kv = double_field(line, line_no, 77, 83, "base kV", false);
    if (bus.type == BusType::Slack) {
      net.slack_index = static_cast<int>(net.buses.size());
      ++slack_seen;
    }
    net.buses.push_back(bus);
  }
  if (!closed) throw MissingSection("bus data has no -999 sentinel");
  if (slack_seen > 1) {
    throw MultipleSlack("found " + std::to_string(slack_seen) + " slack buses");
  }
  if (slack_seen == 0) throw MissingSlack("no slack (type 3) bus");

  find_section("BRANCH DATA FOLLOWS");
  closed = false;
  for (; at < lines.size(); ++at) {
    const std::string& line = lines[at];
    if (is_sentinel(line)) {
      closed = true;
      ++at;
      break;
    }
    if (trimmed(line).empty()) continue;
    const int line_no = static_cast<int>(at) + 1;
    Branch br;
    const int from_id = int_field(line, line_no, 1, 4, "from bus");
    const int to_id = int_field(line, line_no, 6, 9, "to bus");
    br.from = net.bus_position(from_id);
    if (br.from < 0) {
      throw ParseError(line_no, 1, 4,
                       "branch references unknown bus " + std::to_string(from_id));
    }
    br.to = net.bus_position(to_id);
    if (br.to < 0) {
      throw ParseError(line_no, 6, 9,
                       "branch references unknown bus " + std::to_string(to_id));
    }
    br.r = double_field(line, line_no, 20, 29, "series R", true);
    br.x = double_field(line, line_no, 30, 40, "series X", true);
    br.charging_b = double_field(line, line_no, 41, 50, "charging B", false);
    const double tap = double_field(line, line_no, 77, 82, "tap ratio", false);
    br.tap = tap == 0.0 ? 1.0 : tap;
    net.branches.push_back(br);
  }
  if (!closed) throw MissingSection("branch data has no -999 sentinel");

  check_connected(net);
  return net;
}

PowerNetwork parse_cdf_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CdfError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_cdf(buffer.str());
}

}  // namespace sparsec
