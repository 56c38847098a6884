#include "ea/io.hpp"

#include <charconv>
#include <sstream>

namespace ea {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::vector<std::string> tokens;
    std::istringstream ls(raw);
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    out.push_back({number, std::move(tokens)});
  }
  return out;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : lines_(tokenize(text)) {}

  const Line& expect(const std::string& head) {
    if (pos_ >= lines_.size())
      throw ParseError(last_line_ + 1, "expected '" + head + "', got end of input");
    const Line& l = lines_[pos_++];
    last_line_ = l.number;
    if (l.tokens.front() != head)
      throw ParseError(l.number, "expected '" + head + "', got '" + l.tokens.front() + "'");
    return l;
  }

  const Line* peek() const { return pos_ < lines_.size() ? &lines_[pos_] : nullptr; }
  const Line& next() {
    if (pos_ >= lines_.size())
      throw ParseError(last_line_ + 1, "unexpected end of input");
    const Line& l = lines_[pos_++];
    last_line_ = l.number;
    return l;
  }
  bool done() const { return pos_ == lines_.size(); }
  int last_line() const { return last_line_; }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int last_line_ = 0;
};

int parse_int(const Line& l, const std::string& tok, int lo, int hi) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(l.number, "malformed number '" + tok + "'");
  if (value < lo || value > hi)
    throw ParseError(l.number, "index " + tok + " out of range");
  return value;
}

int single_int(const Line& l, int lo, int hi) {
  if (l.tokens.size() != 2)
    throw ParseError(l.number, "expected exactly one value after '" + l.tokens.front() + "'");
  return parse_int(l, l.tokens[1], lo, hi);
}

struct TableBlock {
  std::vector<std::vector<int>> rows;
  std::vector<int> row_lines;
};

TableBlock read_table(Reader& r, int n) {
  r.expect("table");
  TableBlock block;
  for (int i = 0; i < n; ++i) {
    const Line& l = r.next();
    if (static_cast<int>(l.tokens.size()) != n)
      throw ParseError(l.number, "table row needs " + std::to_string(n) + " entries");
    std::vector<int> row;
    for (const auto& tok : l.tokens)
      row.push_back(tok == "." ? kUndef : parse_int(l, tok, 0, n - 1));
    block.rows.push_back(std::move(row));
    block.row_lines.push_back(l.number);
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (block.rows[i][j] != block.rows[j][i])
        throw ParseError(block.row_lines[std::max(i, j)],
                         "asymmetric at (" + std::to_string(std::min(i, j)) + "," +
                             std::to_string(std::max(i, j)) + ")");
  return block;
}

std::vector<std::string> read_labels(Reader& r, int n) {
  const Line* p = r.peek();
  if (!p || p->tokens.front() != "labels") return default_labels(n);
  const Line& l = r.next();
  if (static_cast<int>(l.tokens.size()) != n + 1)
    throw ParseError(l.number, "labels line needs " + std::to_string(n) + " entries");
  std::vector<std::string> labels(l.tokens.begin() + 1, l.tokens.end());
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j])
        throw ParseError(l.number, "duplicate label '" + labels[i] + "'");
  return labels;
}

void append_table(std::ostringstream& out, int n,
                  const std::vector<int>& sum) {
  out << "table\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (j) out << ' ';
      int v = sum[static_cast<std::size_t>(i) * n + j];
      if (v == kUndef)
        out << '.';
      else
        out << v;
    }
    out << '\n';
  }
}

}  // namespace

EffectAlgebra parse_ea(const std::string& text) {
  Reader r(text);
  const Line& head = r.expect("ea");
  int n = single_int(head, 2, kMaxElements);
  auto labels = read_labels(r, n);
  int zero = single_int(r.expect("zero"), 0, n - 1);
  int unit = single_int(r.expect("unit"), 0, n - 1);
  if (unit == zero) throw ParseError(r.last_line(), "zero and unit must differ");
  auto block = read_table(r, n);
  if (!r.done())
    throw ParseError(r.peek()->number, "trailing content after table");
  return make_effect_algebra(n, zero, unit, block.rows, std::move(labels));
}

std::string serialize_ea(const EffectAlgebra& e) {
  std::ostringstream out;
  out << "ea " << e.n << '\n';
  out << "labels";
  for (const auto& l : e.labels) out << ' ' << l;
  out << '\n';
  out << "zero " << e.zero << '\n';
  out << "unit " << e.unit << '\n';
  append_table(out, e.n, e.sum);
  return out.str();
}

Triple parse_triple(const std::string& text) {
  Reader r(text);
  r.expect("triple");

  const Line& sh = r.expect("sharp");
  int k = single_int(sh, 2, kMaxElements);
  int szero = single_int(r.expect("zero"), 0, k - 1);
  int sunit = single_int(r.expect("unit"), 0, k - 1);
  if (szero == sunit) throw ParseError(r.last_line(), "zero and unit must differ");
  auto sharp_rows = read_table(r, k);

  const Line& me = r.expect("meager");
  int m = single_int(me, 1, kMaxElements);
  int mzero = single_int(r.expect("zero"), 0, m - 1);
  auto meager_rows = read_table(r, m);

  r.expect("h");
  std::vector<std::uint64_t> h(k, 0);
  std::vector<bool> seen(k, false);
  for (int i = 0; i < k; ++i) {
    const Line& l = r.next();
    std::string head = l.tokens.front();
    if (head.empty() || head.back() != ':')
      throw ParseError(l.number, "expected '<sharpIndex>:' in h block");
    head.pop_back();
    int s = parse_int(l, head, 0, k - 1);
    if (seen[s]) throw ParseError(l.number, "duplicate h line for index " + head);
    seen[s] = true;
    for (std::size_t t = 1; t < l.tokens.size(); ++t)
      h[s] |= bit(parse_int(l, l.tokens[t], 0, m - 1));
  }
  if (!r.done())
    throw ParseError(r.peek()->number, "trailing content after h block");

  Triple t;
  auto sharp_labels = default_labels(k);
  for (auto& l : sharp_labels) l = "s" + l.substr(1);
  auto meager_labels = default_labels(m);
  for (auto& l : meager_labels) l = "m" + l.substr(1);
  t.sharp = make_effect_algebra(k, szero, sunit, sharp_rows.rows, sharp_labels);
  t.meager = make_gea(m, mzero, meager_rows.rows, meager_labels);
  t.h = std::move(h);
  return t;
}

std::string serialize_triple(const Triple& t) {
  std::ostringstream out;
  out << "triple\n";
  out << "sharp " << t.sharp.n << '\n';
  out << "zero " << t.sharp.zero << '\n';
  out << "unit " << t.sharp.unit << '\n';
  append_table(out, t.sharp.n, t.sharp.sum);
  out << "meager " << t.meager.n << '\n';
  out << "zero " << t.meager.zero << '\n';
  append_table(out, t.meager.n, t.meager.sum);
  out << "h\n";
  for (int s = 0; s < t.sharp.n; ++s) {
    out << s << ':';
    for_bits(t.h[s], [&](int m) { out << ' ' << m; });
    out << '\n';
  }
  return out.str();
}

}  // namespace ea
