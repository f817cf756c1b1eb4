#include "beadlink/forms.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <sstream>

#include "form_kernel.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace beadlink {

namespace detail {

SpaceShape::SpaceShape(std::uint32_t p_, std::size_t n_) : p(p_), n(n_), size(0) {
  PrimeField f(p_);
  if (n_ == 0) throw InputError("vector space dimension must be at least 1");
  size = checked_power(p_, n_, std::size_t{1} << 12);
}

MatrixTables make_tables(const Matrix& m, const SpaceShape& s) {
  const std::size_t N = s.size;
  const std::uint32_t p = s.p;
  // Digits of every vector, most significant first.
  std::vector<Scalar> digits(N * s.n);
  for (std::size_t v = 0; v < N; ++v) {
    std::size_t rem = v;
    for (std::size_t i = s.n; i-- > 0;) {
      digits[v * s.n + i] = static_cast<Scalar>(rem % p);
      rem /= p;
    }
  }
  MatrixTables t;
  t.eval.resize(N * N);
  t.plus.resize(N * N);
  t.minus.resize(N * N);
  std::vector<std::uint64_t> bv(s.n);
  for (std::size_t b = 0; b < N; ++b) {
    // B b
    for (std::size_t i = 0; i < s.n; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < s.n; ++j) acc += std::uint64_t{m.at(i, j)} * digits[b * s.n + j] % p;
      bv[i] = acc % p;
    }
    for (std::size_t a = 0; a < N; ++a) {
      std::uint64_t e = 0;
      for (std::size_t i = 0; i < s.n; ++i) e += digits[a * s.n + i] * bv[i] % p;
      e %= p;
      t.eval[a * N + b] = static_cast<Scalar>(e);
      std::size_t up = 0, down = 0;
      for (std::size_t i = 0; i < s.n; ++i) {
        const std::uint64_t ai = digits[a * s.n + i];
        const std::uint64_t shift = e * digits[b * s.n + i] % p;
        up = up * p + (ai + shift) % p;
        down = down * p + (ai + p - shift) % p;
      }
      t.plus[a * N + b] = static_cast<VecIndex>(up);
      t.minus[a * N + b] = static_cast<VecIndex>(down);
    }
  }
  return t;
}

int resolve_threads(int requested) {
#ifdef _OPENMP
  return requested > 0 ? requested : omp_get_max_threads();
#else
  (void)requested;
  return 1;
#endif
}

}  // namespace detail

FieldElem BilinearForm::eval(Element x, Element y, const Vec& a, const Vec& b) const {
  if (x >= quandle_order() || y >= quandle_order()) {
    throw InputError("quandle element out of range 1.." + std::to_string(quandle_order()));
  }
  return bilinear_eval(block(x, y), a, b);
}

FormData zero_form(std::size_t quandle_order, std::uint32_t p, std::size_t n) {
  PrimeField f(p);
  FormData d{quandle_order, n, p, {}};
  d.blocks.assign(quandle_order * quandle_order, Matrix(f, n));
  return d;
}

FormData constant_form(std::size_t quandle_order, const Matrix& s) {
  FormData d{quandle_order, s.dim(), s.modulus(), {}};
  d.blocks.assign(quandle_order * quandle_order, s);
  return d;
}

std::string describe(const FormViolation& v) {
  auto l = [](Element e) { return std::to_string(e + 1); };
  std::ostringstream os;
  switch (v.axiom) {
    case 1:
      os << "axiom (i) at x=" << l(v.x) << ", a=" << to_string(v.a) << ": [a,a] = " << v.lhs;
      break;
    case 2:
    case 3:
      os << "axiom (" << (v.axiom == 2 ? "ii" : "iii") << ") at (x,y,z)=(" << l(v.x) << "," << l(v.y) << ","
         << l(v.z) << "), a=" << to_string(v.a) << ", b=" << to_string(v.b) << ", c=" << to_string(v.c)
         << ": " << v.lhs << " != " << v.rhs;
      break;
    default:
      os << "unknown axiom " << v.axiom;
  }
  return os.str();
}

namespace {

void check_shape(const Quandle& q, const FormData& raw) {
  PrimeField f(raw.modulus);
  if (raw.dim == 0) throw InputError("form dimension must be at least 1");
  if (raw.quandle_order != q.order()) {
    throw InputError("form is indexed by " + std::to_string(raw.quandle_order) + " elements but the quandle has " +
                     std::to_string(q.order()));
  }
  if (raw.blocks.size() != raw.quandle_order * raw.quandle_order) {
    throw InputError("form has " + std::to_string(raw.blocks.size()) + " blocks, expected " +
                     std::to_string(raw.quandle_order * raw.quandle_order));
  }
  for (const auto& b : raw.blocks) {
    if (b.dim() != raw.dim || b.modulus() != raw.modulus) {
      throw InputError("form block has shape " + std::to_string(b.dim()) + " over F_" +
                       std::to_string(b.modulus()) + ", expected " + std::to_string(raw.dim) + " over F_" +
                       std::to_string(raw.modulus));
    }
  }
}

struct TripleReport {
  std::vector<FormViolation> witnesses;
  std::uint64_t count = 0;
};

}  // namespace

FormCheck validate_form(const Quandle& q, const FormData& raw, const ValidateOptions& opts) {
  check_shape(q, raw);
  const detail::SpaceShape shape(raw.modulus, raw.dim);
  const PrimeField field(raw.modulus);
  const std::size_t m = q.order();
  const std::size_t N = shape.size;

  std::vector<detail::MatrixTables> tables;
  std::vector<std::size_t> table_of(m * m);
  {
    std::vector<const Matrix*> distinct;
    for (std::size_t k = 0; k < m * m; ++k) {
      std::size_t id = 0;
      while (id < distinct.size() && !(*distinct[id] == raw.blocks[k])) ++id;
      if (id == distinct.size()) {
        distinct.push_back(&raw.blocks[k]);
        tables.push_back(detail::make_tables(raw.blocks[k], shape));
      }
      table_of[k] = id;
    }
  }
  auto tab = [&](Element x, Element y) -> const detail::MatrixTables& { return tables[table_of[x * m + y]]; };
  auto vec = [&](std::size_t i) { return vector_at(field, raw.dim, i); };

  FormCheck out;
  auto keep = [&](FormViolation v) {
    ++out.violation_count;
    if (out.violations.size() < opts.cap) out.violations.push_back(std::move(v));
  };

  for (Element x = 0; x < m; ++x) {
    if (is_alternating(raw.block(x, x))) continue;
    const auto& t = tab(x, x);
    for (std::size_t a = 0; a < N; ++a) {
      if (t.eval[a * N + a] != 0) keep({1, x, x, x, vec(a), vec(a), vec(a), t.eval[a * N + a], 0});
    }
  }

  const std::size_t triples = m * m * m;
  std::vector<TripleReport> reports(triples);
  const std::size_t cap = opts.cap;
  const std::uint32_t p = raw.modulus;
  [[maybe_unused]] const int threads = detail::resolve_threads(opts.threads);
  auto run = [&](std::size_t t) {
    const auto x = static_cast<Element>(t / (m * m));
    const auto y = static_cast<Element>((t / m) % m);
    const auto z = static_cast<Element>(t % m);
    auto& rep = reports[t];
    auto record = [&](int axiom) {
      return [&, axiom](std::size_t a, std::size_t b, std::size_t c, Scalar lhs, Scalar rhs) {
        ++rep.count;
        if (rep.witnesses.size() < cap) rep.witnesses.push_back({axiom, x, y, z, vec(a), vec(b), vec(c), lhs, rhs});
        return true;
      };
    };
    detail::scan_axiom2(tab(x, y), tab(x, z), tab(y, z), tab(q.op(x, z), q.op(y, z)), N, record(2));
    detail::scan_axiom3(tab(x, y), tab(x, z), tab(y, z), tab(q.op(x, y), z), N, p, record(3));
  };
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
#endif
  for (std::size_t t = 0; t < triples; ++t) run(t);

  for (auto& rep : reports) {
    out.violation_count += rep.count;
    for (auto& w : rep.witnesses) {
      if (out.violations.size() >= cap) break;
      out.violations.push_back(std::move(w));
    }
  }
  if (out.violation_count == 0) out.form = FormFactory::make(q, raw);
  return out;
}

FormCheck validate_form_reference(const Quandle& q, const FormData& raw, std::size_t cap) {
  check_shape(q, raw);
  const PrimeField field(raw.modulus);
  const auto vs = all_vectors(raw.modulus, raw.dim);
  const std::size_t m = q.order();
  FormCheck out;
  auto keep = [&](FormViolation v) {
    ++out.violation_count;
    if (out.violations.size() < cap) out.violations.push_back(std::move(v));
  };
  auto form = [&](const Vec& u, const Vec& v, Element x, Element y) { return bilinear_eval(raw.block(x, y), u, v); };

  for (Element x = 0; x < m; ++x) {
    for (const auto& a : vs) {
      const auto v = form(a, a, x, x);
      if (v.value != 0) keep({1, x, x, x, a, a, a, v.value, 0});
    }
  }
  for (Element x = 0; x < m; ++x) {
    for (Element y = 0; y < m; ++y) {
      for (Element z = 0; z < m; ++z) {
        for (const auto& a : vs) {
          for (const auto& b : vs) {
            for (const auto& c : vs) {
              const auto lhs = form(a, b, x, y);
              const auto rhs = form(a + form(a, c, x, z) * c, b + form(b, c, y, z) * c, q.op(x, z), q.op(y, z));
              if (lhs != rhs) keep({2, x, y, z, a, b, c, lhs.value, rhs.value});
            }
          }
        }
        for (const auto& a : vs) {
          for (const auto& b : vs) {
            for (const auto& c : vs) {
              const auto ab = form(a, b, x, y);
              const auto lhs = form(a, c, q.op(x, y), z) + ab * form(b, c, q.op(x, y), z);
              const auto rhs = form(a, c, x, z) + ab * form(b, c, y, z);
              if (lhs != rhs) keep({3, x, y, z, a, b, c, lhs.value, rhs.value});
            }
          }
        }
      }
    }
  }
  if (out.violation_count == 0) out.form = FormFactory::make(q, raw);
  return out;
}

BilinearForm make_form(const Quandle& q, const FormData& raw) {
  auto check = validate_form(q, raw, {3, 0});
  if (!check.valid()) {
    std::string msg = "not an X-bilinear form (" + std::to_string(check.violation_count) + " violations)";
    for (const auto& v : check.violations) msg += "; " + describe(v);
    throw InputError(msg);
  }
  return std::move(*check.form);
}

// --- file format --------------------------------------------------------------

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

long long parse_int(const std::string& tok, const std::string& source, std::size_t lineno) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty()) throw ParseError(source, lineno, "non-integer token `" + tok + "`");
  return v;
}

}  // namespace

FormData parse_form(std::istream& in, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  if (!next_content_line(in, line, lineno)) throw ParseError(source, lineno, "empty form file");
  std::istringstream hs(line);
  std::string kw, extra, ms, ns, ps;
  if (!(hs >> kw >> ms >> ns >> ps) || kw != "form" || (hs >> extra)) {
    throw ParseError(source, lineno, "expected header `form <m> <n> <p>`");
  }
  const long long m = parse_int(ms, source, lineno);
  const long long n = parse_int(ns, source, lineno);
  const long long p = parse_int(ps, source, lineno);
  if (m <= 0 || n <= 0 || p <= 1 || p > (1ll << 31)) throw ParseError(source, lineno, "invalid form dimensions");
  if (!is_prime(static_cast<std::uint64_t>(p))) throw ParseError(source, lineno, "modulus " + ps + " is not prime");
  const PrimeField field(static_cast<std::uint32_t>(p));

  FormData d;
  d.quandle_order = static_cast<std::size_t>(m);
  d.dim = static_cast<std::size_t>(n);
  d.modulus = static_cast<std::uint32_t>(p);
  std::vector<std::optional<Matrix>> blocks(d.quandle_order * d.quandle_order);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (!next_content_line(in, line, lineno)) {
      throw ParseError(source, lineno, "expected " + std::to_string(blocks.size()) + " blocks, found " +
                                           std::to_string(k));
    }
    std::istringstream bs(line);
    std::string bkw, xs, ys;
    if (!(bs >> bkw >> xs >> ys) || bkw != "B" || (bs >> extra)) {
      throw ParseError(source, lineno, "expected block header `B <x> <y>`");
    }
    const long long x = parse_int(xs, source, lineno), y = parse_int(ys, source, lineno);
    if (x < 1 || x > m || y < 1 || y > m) {
      throw ParseError(source, lineno, "block index out of range 1.." + std::to_string(m));
    }
    const std::size_t slot = static_cast<std::size_t>((x - 1) * m + (y - 1));
    if (blocks[slot]) throw ParseError(source, lineno, "duplicate block B " + xs + " " + ys);
    const std::size_t header_line = lineno;
    std::vector<Scalar> entries;
    for (long long r = 0; r < n; ++r) {
      if (!next_content_line(in, line, lineno)) {
        throw ParseError(source, lineno, "block B " + xs + " " + ys + " (line " + std::to_string(header_line) +
                                             ") is missing rows");
      }
      std::istringstream rs(line);
      std::string tok;
      long long cols = 0;
      while (rs >> tok) {
        const long long v = parse_int(tok, source, lineno);
        if (v < 0 || v >= p) throw ParseError(source, lineno, "entry " + tok + " out of range 0.." + std::to_string(p - 1));
        entries.push_back(static_cast<Scalar>(v));
        ++cols;
      }
      if (cols != n) throw ParseError(source, lineno, "matrix row has " + std::to_string(cols) + " entries, expected " + ns);
    }
    blocks[slot] = Matrix(field, d.dim, std::move(entries));
  }
  if (next_content_line(in, line, lineno)) throw ParseError(source, lineno, "trailing content after last block");
  for (auto& b : blocks) d.blocks.push_back(std::move(*b));
  return d;
}

FormData load_form(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open form file " + path.string());
  return parse_form(in, path.string());
}

std::string format_form(const FormData& f) {
  std::ostringstream os;
  os << "form " << f.quandle_order << ' ' << f.dim << ' ' << f.modulus << '\n';
  for (Element x = 0; x < f.quandle_order; ++x) {
    for (Element y = 0; y < f.quandle_order; ++y) {
      os << "B " << x + 1 << ' ' << y + 1 << '\n';
      const auto& b = f.block(x, y);
      for (std::size_t i = 0; i < f.dim; ++i) {
        for (std::size_t j = 0; j < f.dim; ++j) os << (j ? " " : "") << b.at(i, j);
        os << '\n';
      }
    }
  }
  return os.str();
}

}  // namespace beadlink
