// Wall-clock comparison of the serial reference paths against the
// table-driven and parallel kernels.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "beadlink/catalog.hpp"
#include "beadlink/coloring.hpp"
#include "beadlink/forms.hpp"
#include "beadlink/invariant.hpp"

using namespace beadlink;

namespace {

double best_ms(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& group, const std::string& variant, double ms, double baseline) {
  std::printf("%-34s %-22s %12.3f ms %8.2fx\n", group.c_str(), variant.c_str(), ms, baseline / ms);
}

Matrix symplectic_block(std::size_t n) {
  Matrix s(PrimeField(2), n);
  for (std::size_t i = 0; i + 1 < n; i += 2) {
    s.set(i, i + 1, 1);
    s.set(i + 1, i, 1);
  }
  return s;
}

void bench_validate(const std::string& label, const Quandle& q, const FormData& raw, int reps) {
  const double ref = best_ms(reps, [&] { validate_form_reference(q, raw); });
  const double serial = best_ms(reps, [&] { validate_form(q, raw, {20, 1}); });
  const double par = best_ms(reps, [&] { validate_form(q, raw, {20, 0}); });
  row(label, "reference", ref, ref);
  row(label, "tables, 1 thread", serial, ref);
  row(label, "tables, all threads", par, ref);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel benchmarks"};
  int reps = 3;
  std::string catalog_root = BEADLINK_BENCH_CATALOG;
  app.add_option("--reps", reps, "Repetitions per measurement (best is reported)")->check(CLI::PositiveNumber);
  app.add_option("--catalog", catalog_root, "Catalog directory");
  CLI11_PARSE(app, argc, argv);

  const Catalog cat(catalog_root);
  const auto q = cat.quandle("ex33");
  std::printf("%-34s %-22s %15s %9s\n", "kernel", "variant", "best", "speedup");

  bench_validate("validate ex33 form", q, cat.form("ex33"), reps);
  const auto sp4 = symplectic_quandle(2, 4, symplectic_block(4));
  bench_validate("validate symplectic F_2^4 form", sp4, constant_form(sp4.order(), symplectic_block(4)), reps);

  std::vector<LinkDiagram> links;
  for (const auto& name : cat.list()) links.push_back(cat.load(name).diagram);
  const auto phi = make_form(q, cat.form("ex33"));
  auto batch = [&](Engine engine, int threads) {
    return [&, engine, threads] {
      ComputeOptions opts;
      opts.engine = engine;
      opts.threads = threads;
      for (const auto& d : links) compute_invariant(d, q, phi, opts);
    };
  };
  const double oracle = best_ms(reps, batch(Engine::Oracle, 1));
  const double oracle_par = best_ms(reps, batch(Engine::Oracle, 0));
  const double prop = best_ms(reps, batch(Engine::Propagate, 1));
  const double prop_par = best_ms(reps, batch(Engine::Propagate, 0));
  row("catalog batch (18 links)", "oracle, 1 thread", oracle, oracle);
  row("catalog batch (18 links)", "oracle, all threads", oracle_par, oracle);
  row("catalog batch (18 links)", "propagate, 1 thread", prop, oracle);
  row("catalog batch (18 links)", "propagate, all threads", prop_par, oracle);

  SearchOptions serial, parallel;
  parallel.threads = 0;
  const double s1 = best_ms(reps, [&] { search_forms(q, 2, 2, serial); });
  const double sn = best_ms(reps, [&] { search_forms(q, 2, 2, parallel); });
  row("form search ex33, p=2 n=2", "1 thread", s1, s1);
  row("form search ex33, p=2 n=2", "all threads", sn, s1);

  const auto r3 = alexander_quandle(3, 2);
  const double t1 = best_ms(reps, [&] { search_forms(r3, 2, 2, serial); });
  const double tn = best_ms(reps, [&] { search_forms(r3, 2, 2, parallel); });
  row("form search R3, p=2 n=2", "1 thread", t1, t1);
  row("form search R3, p=2 n=2", "all threads", tn, t1);
  return 0;
}
