#include "beadlink/quandle.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "beadlink/error.hpp"

namespace beadlink {

struct QuandleBuilder {
  // Assumes the table has already passed every axiom check.
  static Quandle build(std::size_t m, std::vector<Element> table) {
    Quandle q;
    q.order_ = m;
    q.table_ = std::move(table);
    q.inv_.assign(m * m, 0);
    for (std::size_t x = 0; x < m; ++x) {
      for (std::size_t y = 0; y < m; ++y) q.inv_[q.table_[x * m + y] * m + y] = static_cast<Element>(x);
    }
    return q;
  }
};

bool Quandle::is_involutory() const noexcept {
  for (std::size_t x = 0; x < order_; ++x) {
    for (std::size_t y = 0; y < order_; ++y) {
      if (op(op(static_cast<Element>(x), static_cast<Element>(y)), static_cast<Element>(y)) != x) return false;
    }
  }
  return true;
}

Table Quandle::table() const {
  Table t(order_, std::vector<std::int64_t>(order_));
  for (std::size_t x = 0; x < order_; ++x) {
    for (std::size_t y = 0; y < order_; ++y) t[x][y] = table_[x * order_ + y];
  }
  return t;
}

QuandleCheck validate_quandle(const Table& table) {
  const std::size_t m = table.size();
  if (m == 0) throw InputError("quandle table is empty");
  std::vector<Element> t(m * m);
  for (std::size_t x = 0; x < m; ++x) {
    if (table[x].size() != m) {
      throw InputError("quandle table row " + std::to_string(x + 1) + " has " +
                       std::to_string(table[x].size()) + " entries, expected " + std::to_string(m));
    }
    for (std::size_t y = 0; y < m; ++y) {
      const auto v = table[x][y];
      if (v < 0 || static_cast<std::size_t>(v) >= m) {
        throw InputError("quandle table entry (" + std::to_string(x + 1) + "," + std::to_string(y + 1) +
                         ") = " + std::to_string(v + 1) + " out of range 1.." + std::to_string(m));
      }
      t[x * m + y] = static_cast<Element>(v);
    }
  }
  auto at = [&](std::size_t x, std::size_t y) { return t[x * m + y]; };
  auto label = [](std::size_t e) { return std::to_string(e + 1); };

  QuandleCheck out;
  for (std::size_t x = 0; x < m; ++x) {
    if (at(x, x) != x) {
      out.violations.push_back({1, static_cast<Element>(x), static_cast<Element>(x), static_cast<Element>(x),
                                "idempotence fails: " + label(x) + " > " + label(x) + " = " + label(at(x, x))});
    }
  }
  for (std::size_t y = 0; y < m; ++y) {
    std::vector<std::size_t> first(m, m);
    for (std::size_t x = 0; x < m; ++x) {
      const auto img = at(x, y);
      if (first[img] != m) {
        out.violations.push_back({2, static_cast<Element>(first[img]), static_cast<Element>(y),
                                  static_cast<Element>(x),
                                  "right translation by " + label(y) + " not injective: " + label(first[img]) +
                                      " > " + label(y) + " = " + label(x) + " > " + label(y) + " = " +
                                      label(img)});
      } else {
        first[img] = x;
      }
    }
  }
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      for (std::size_t z = 0; z < m; ++z) {
        const auto lhs = at(at(x, y), z);
        const auto rhs = at(at(x, z), at(y, z));
        if (lhs != rhs) {
          out.violations.push_back({3, static_cast<Element>(x), static_cast<Element>(y), static_cast<Element>(z),
                                    "self-distributivity fails at (" + label(x) + "," + label(y) + "," + label(z) +
                                        "): " + label(lhs) + " != " + label(rhs)});
        }
      }
    }
  }
  if (out.violations.empty()) out.quandle = QuandleBuilder::build(m, std::move(t));
  return out;
}

Quandle make_quandle(const Table& table) {
  auto check = validate_quandle(table);
  if (!check.valid()) {
    std::string msg = "not a quandle (" + std::to_string(check.violations.size()) + " violations)";
    for (std::size_t i = 0; i < check.violations.size() && i < 3; ++i) msg += "; " + check.violations[i].message;
    throw InputError(msg);
  }
  return std::move(*check.quandle);
}

Group::Group(const Table& mul) : n_(mul.size()) {
  if (n_ == 0) throw InputError("group table is empty");
  mul_.resize(n_ * n_);
  for (std::size_t g = 0; g < n_; ++g) {
    if (mul[g].size() != n_) throw InputError("group table is not square");
    for (std::size_t h = 0; h < n_; ++h) {
      if (mul[g][h] < 0 || static_cast<std::size_t>(mul[g][h]) >= n_) {
        throw InputError("group table entry out of range");
      }
      mul_[g * n_ + h] = static_cast<Element>(mul[g][h]);
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n_ && !found; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n_ && ok; ++g) ok = mul_[e * n_ + g] == g && mul_[g * n_ + e] == g;
    if (ok) {
      e_ = static_cast<Element>(e);
      found = true;
    }
  }
  if (!found) throw InputError("group table has no identity");
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      for (std::size_t c = 0; c < n_; ++c) {
        if (mul_[mul_[a * n_ + b] * n_ + c] != mul_[a * n_ + mul_[b * n_ + c]]) {
          throw InputError("group table is not associative");
        }
      }
    }
  }
  inv_.assign(n_, 0);
  for (std::size_t g = 0; g < n_; ++g) {
    bool has = false;
    for (std::size_t h = 0; h < n_ && !has; ++h) {
      if (mul_[g * n_ + h] == e_) {
        inv_[g] = static_cast<Element>(h);
        has = true;
      }
    }
    if (!has) throw InputError("group element " + std::to_string(g + 1) + " has no inverse");
  }
}

Table cyclic_group_table(std::size_t n) {
  Table t(n, std::vector<std::int64_t>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<std::int64_t>((a + b) % n);
  }
  return t;
}

Table dihedral_group_table(std::size_t n) {
  // r^a s^i * r^b s^j = r^(a + (-1)^i b) s^(i+j)
  const std::size_t order = 2 * n;
  Table t(order, std::vector<std::int64_t>(order));
  for (std::size_t g = 0; g < order; ++g) {
    for (std::size_t h = 0; h < order; ++h) {
      const std::size_t a = g / 2, i = g % 2, b = h / 2, j = h % 2;
      const std::size_t k = i == 0 ? (a + b) % n : (a + n - b) % n;
      t[g][h] = static_cast<std::int64_t>(2 * k + ((i + j) % 2));
    }
  }
  return t;
}

Table quaternion_group_table() {
  // Elements ±1, ±i, ±j, ±k indexed 2*unit + (negative ? 1 : 0), unit in {1,i,j,k}.
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  Table t(8, std::vector<std::int64_t>(8));
  for (int g = 0; g < 8; ++g) {
    for (int h = 0; h < 8; ++h) {
      const int u = g / 2, v = h / 2;
      const int neg = (g % 2 + h % 2 + unit_sign[u][v]) % 2;
      t[g][h] = 2 * unit_mul[u][v] + neg;
    }
  }
  return t;
}

Quandle conjugation_quandle(const Group& g) {
  const std::size_t n = g.order();
  Table t(n, std::vector<std::int64_t>(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) t[a][b] = g.mul(g.mul(g.inv(b), a), b);
  }
  return make_quandle(t);
}

Quandle core_quandle(const Group& g) {
  const std::size_t n = g.order();
  Table t(n, std::vector<std::int64_t>(n));
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) t[a][b] = g.mul(g.mul(b, g.inv(a)), b);
  }
  return make_quandle(t);
}

Quandle alexander_quandle(std::uint32_t n, std::int64_t t) {
  if (n == 0) throw InputError("Alexander quandle modulus must be positive");
  const std::int64_t nn = n;
  const std::int64_t tr = ((t % nn) + nn) % nn;
  if (std::gcd(tr, nn) != 1) {
    throw InputError("t = " + std::to_string(t) + " is not a unit mod " + std::to_string(n));
  }
  Table tab(n, std::vector<std::int64_t>(n));
  for (std::int64_t x = 0; x < nn; ++x) {
    for (std::int64_t y = 0; y < nn; ++y) tab[x][y] = ((tr * x + (1 - tr + nn) * y) % nn + nn) % nn;
  }
  return make_quandle(tab);
}

Quandle symplectic_quandle(std::uint32_t p, std::size_t n, const Matrix& s) {
  if (s.modulus() != p || s.dim() != n) throw InputError("symplectic form does not match F_p^n");
  if (!is_alternating(s)) throw InputError("symplectic form is not alternating");
  if (matrix_rank(s) != n) throw InputError("symplectic form is degenerate");
  const auto vs = all_vectors(p, n);
  const std::size_t m = vs.size();
  Table tab(m, std::vector<std::int64_t>(m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) {
      tab[x][y] = static_cast<std::int64_t>(vector_index(vs[x] + bilinear_eval(s, vs[x], vs[y]) * vs[y]));
    }
  }
  return make_quandle(tab);
}

Quandle trivial_quandle(std::size_t m) {
  Table t(m, std::vector<std::int64_t>(m));
  for (std::size_t x = 0; x < m; ++x) {
    for (std::size_t y = 0; y < m; ++y) t[x][y] = static_cast<std::int64_t>(x);
  }
  return make_quandle(t);
}

namespace {

bool next_content_line(std::istream& in, std::string& line, std::size_t& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

}  // namespace

Table parse_quandle_table(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(source, lineno, "empty quandle file");
  std::istringstream header(line);
  std::string kw;
  long long m = 0;
  std::string extra;
  if (!(header >> kw >> m) || kw != "quandle" || m <= 0 || (header >> extra)) {
    throw ParseError(source, lineno, "expected header `quandle <order>`");
  }
  Table t;
  while (static_cast<long long>(t.size()) < m) {
    if (!next_content_line(in, line, lineno)) {
      throw ParseError(source, lineno, "expected " + std::to_string(m) + " rows, found " + std::to_string(t.size()));
    }
    std::istringstream row(line);
    std::vector<std::int64_t> r;
    std::string tok;
    while (row >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw ParseError(source, lineno, "non-integer entry `" + tok + "`");
      if (v < 1 || v > m) {
        throw ParseError(source, lineno, "entry " + tok + " out of range 1.." + std::to_string(m));
      }
      r.push_back(v - 1);
    }
    if (static_cast<long long>(r.size()) != m) {
      throw ParseError(source, lineno, "row has " + std::to_string(r.size()) + " entries, expected " + std::to_string(m));
    }
    t.push_back(std::move(r));
  }
  if (next_content_line(in, line, lineno)) throw ParseError(source, lineno, "trailing content after table");
  return t;
}

Quandle parse_quandle(std::istream& in, const std::string& source) {
  return make_quandle(parse_quandle_table(in, source));
}

Quandle load_quandle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open quandle file " + path.string());
  return parse_quandle(in, path.string());
}

std::string format_quandle(const Quandle& q) {
  std::ostringstream os;
  os << "quandle " << q.order() << '\n';
  for (Element x = 0; x < q.order(); ++x) {
    for (Element y = 0; y < q.order(); ++y) os << (y ? " " : "") << q.op(x, y) + 1;
    os << '\n';
  }
  return os.str();
}

}  // namespace beadlink
