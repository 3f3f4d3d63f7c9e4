// Times the parallel GF(2) kernels against the serial reference
// implementations and checks the results agree bit for bit.
//
//   bench_kernels [n] [reps]   (default n = 1024, reps = 5)

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>

#include "homprod/gf2.hpp"

using namespace homprod;

namespace {

gf2::BinMatrix random_matrix(std::size_t r, std::size_t c, std::mt19937_64& rng) {
  gf2::BinMatrix m(r, c);
  std::bernoulli_distribution bit(0.5);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (bit(rng)) m.set(i, j, true);
  return m;
}

template <typename F>
double time_best_ms(int reps, F&& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1024;
  int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::mt19937_64 rng(7);

  gf2::BinMatrix a = random_matrix(n, n, rng);
  gf2::BinMatrix b = random_matrix(n, n, rng);
  gf2::BinMatrix prod_par, prod_ser;
  double mul_par = time_best_ms(reps, [&] { prod_par = a * b; });
  double mul_ser = time_best_ms(reps, [&] { prod_ser = gf2::reference::multiply(a, b); });
  bool mul_ok = prod_par == prod_ser;

  std::size_t kn = std::max<std::size_t>(8, n / 16);
  gf2::BinMatrix ka = random_matrix(kn, kn, rng);
  gf2::BinMatrix kb = random_matrix(16, 16, rng);
  gf2::BinMatrix kron_par, kron_ser;
  double kr_par = time_best_ms(reps, [&] { kron_par = gf2::kron(ka, kb); });
  double kr_ser = time_best_ms(reps, [&] { kron_ser = gf2::reference::kron(ka, kb); });
  bool kr_ok = kron_par == kron_ser;

  std::cout << "kernel      size            parallel_ms  serial_ms  speedup  match\n";
  auto line = [](const std::string& name, const std::string& size, double p, double s,
                 bool ok) {
    std::printf("%-11s %-15s %11.3f %10.3f %8.2f  %s\n", name.c_str(), size.c_str(), p, s,
                p > 0 ? s / p : 0.0, ok ? "yes" : "NO");
  };
  line("multiply", std::to_string(n) + "x" + std::to_string(n), mul_par, mul_ser, mul_ok);
  line("kron", std::to_string(kn) + "x" + std::to_string(kn) + " (x) 16x16", kr_par, kr_ser,
       kr_ok);
  return (mul_ok && kr_ok) ? 0 : 1;
}
