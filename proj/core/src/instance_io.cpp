#include "knockout/instance_io.hpp"

#include <charconv>
#include <vector>

namespace knockout {

std::string format_instance(const TfpInstance& instance) {
  const int n = instance.size();
  std::string out = "tfp v1\n";
  out += "n " + std::to_string(n) + "\n";
  out += "s " + std::to_string(instance.seeds.count()) + "\n";
  if (!instance.seeds.empty()) {
    out += "seeds";
    for (PlayerId p : instance.seeds.holders()) out += " " + std::to_string(p);
    out += "\n";
  }
  out += "target " + std::to_string(instance.target) + "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out += (i != j && instance.graph.beats(i, j)) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string format_bracket(const Bracket& bracket) {
  std::string out = "bracket";
  for (PlayerId p : bracket.leaves()) out += " " + std::to_string(p);
  out += "\n";
  return out;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

// Splits on single spaces; empty fields (double or trailing spaces) are kept
// so they can be rejected.
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = line.find(' ', start);
    fields.push_back(line.substr(start, end == std::string_view::npos ? end : end - start));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

int parse_int(std::string_view field, int line_no, std::string_view what) {
  int value = 0;
  if (field.empty() || (field.size() > 1 && field[0] == '0'))
    throw ParseError(line_no, "malformed " + std::string(what) + " '" + std::string(field) + "'");
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || value < 0)
    throw ParseError(line_no, "malformed " + std::string(what) + " '" + std::string(field) + "'");
  return value;
}

class LineReader {
 public:
  explicit LineReader(std::string_view text) : lines_(split_lines(text)) {
    for (std::size_t i = 0; i < lines_.size(); ++i)
      if (!lines_[i].empty() && lines_[i].back() == '\r')
        throw ParseError(static_cast<int>(i) + 1, "CR line ending");
  }

  bool done() const { return next_ >= lines_.size(); }
  int line_no() const { return static_cast<int>(next_) + 1; }

  std::string_view next(std::string_view expecting) {
    if (done()) throw ParseError(line_no(), "unexpected end of input, expected " + std::string(expecting));
    return lines_[next_++];
  }

  // Value of a "key value" line.
  int keyed(std::string_view key) {
    const int at = line_no();
    const auto fields = split_fields(next(key));
    if (fields.size() != 2 || fields[0] != key)
      throw ParseError(at, "expected '" + std::string(key) + " <int>'");
    return parse_int(fields[1], at, key);
  }

 private:
  std::vector<std::string_view> lines_;
  std::size_t next_ = 0;
};

Bracket parse_bracket_line(std::string_view line, int line_no, int expected_n) {
  const auto fields = split_fields(line);
  if (fields.empty() || fields[0] != "bracket") throw ParseError(line_no, "expected 'bracket ...'");
  std::vector<PlayerId> leaves;
  for (std::size_t i = 1; i < fields.size(); ++i)
    leaves.push_back(parse_int(fields[i], line_no, "player id"));
  if (expected_n >= 0 && static_cast<int>(leaves.size()) != expected_n)
    throw ParseError(line_no, "bracket has " + std::to_string(leaves.size()) + " entries, expected " +
                                  std::to_string(expected_n));
  try {
    return Bracket(std::move(leaves));
  } catch (const std::invalid_argument& e) {
    throw ParseError(line_no, e.what());
  }
}

}  // namespace

InstanceDocument parse_document(std::string_view text) {
  LineReader in(text);
  if (in.next("header") != "tfp v1") throw ParseError(1, "expected header 'tfp v1'");

  const int n_line = in.line_no();
  const int n = in.keyed("n");
  if (n < 2 || !is_power_of_two(n)) throw ParseError(n_line, "n must be a power of two >= 2");
  const int s_line = in.line_no();
  const int s = in.keyed("s");
  if (s != 0 && (s < 2 || !is_power_of_two(s) || s > n / 2))
    throw ParseError(s_line, "s must be 0 or a power of two in [2, n/2]");

  InstanceDocument doc;
  if (s > 0) {
    const int at = in.line_no();
    const auto fields = split_fields(in.next("seeds"));
    if (fields[0] != "seeds") throw ParseError(at, "expected 'seeds ...'");
    if (static_cast<int>(fields.size()) != s + 1)
      throw ParseError(at, "expected " + std::to_string(s) + " seed holders");
    std::vector<PlayerId> holders;
    for (std::size_t i = 1; i < fields.size(); ++i) {
      const int p = parse_int(fields[i], at, "seed holder");
      if (p >= n) throw ParseError(at, "seed holder " + std::to_string(p) + " out of range");
      holders.push_back(p);
    }
    try {
      doc.instance.seeds = SeedAssignment(std::move(holders));
    } catch (const std::invalid_argument& e) {
      throw ParseError(at, e.what());
    }
  }

  const int t_line = in.line_no();
  doc.instance.target = in.keyed("target");
  if (doc.instance.target >= n) throw ParseError(t_line, "target out of range");

  TournamentGraph graph(n);
  std::vector<std::string> rows;
  for (int i = 0; i < n; ++i) {
    const int at = in.line_no();
    const std::string_view row = in.next("matrix row");
    if (static_cast<int>(row.size()) != n)
      throw ParseError(at, "matrix row must have " + std::to_string(n) + " characters");
    for (int j = 0; j < n; ++j)
      if (row[j] != '0' && row[j] != '1') throw ParseError(at, "matrix entries must be 0 or 1");
    if (row[i] != '0') throw ParseError(at, "diagonal entry must be 0");
    rows.emplace_back(row);
  }
  const int first_row = t_line + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool ij = rows[i][j] == '1', ji = rows[j][i] == '1';
      if (ij == ji)
        throw ParseError(first_row + i, "entries (" + std::to_string(i) + "," + std::to_string(j) +
                                            ") and (" + std::to_string(j) + "," + std::to_string(i) +
                                            ") must differ");
      if (ij)
        graph.set_winner(i, j);
      else
        graph.set_winner(j, i);
    }
  doc.instance.graph = std::move(graph);

  if (!in.done()) {
    const int at = in.line_no();
    doc.bracket = parse_bracket_line(in.next("bracket"), at, n);
  }
  if (!in.done()) throw ParseError(in.line_no(), "trailing content");
  return doc;
}

TfpInstance parse_instance(std::string_view text) {
  InstanceDocument doc = parse_document(text);
  if (doc.bracket) {
    const int header_lines = doc.instance.seeds.empty() ? 4 : 5;
    throw ParseError(header_lines + doc.instance.size() + 1, "unexpected bracket line");
  }
  return std::move(doc.instance);
}

Bracket parse_bracket(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.size() != 1) throw ParseError(lines.empty() ? 1 : 2, "expected a single bracket line");
  return parse_bracket_line(lines[0], 1, -1);
}

}  // namespace knockout
