// Compares the OpenMP-parallel sweep kernels against the serial reference
// paths and reports timings plus agreement.

#include <chrono>
#include <iostream>

#include "toposcan/workbench.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_s(const std::function<void()>& fn) {
  const auto t0 = Clock::now();
  fn();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main() {
  using namespace toposcan;

  {
    const CategoryBounds bounds{1, 6};
    std::vector<FiniteCategory> serial, parallel;
    const double ts = time_s([&] { serial = enumerate_categories_list(bounds, false); });
    const double tp = time_s([&] { parallel = enumerate_categories_list(bounds, true); });
    bool same = serial.size() == parallel.size();
    for (size_t i = 0; same && i < serial.size(); ++i)
      same = category_key(serial[i]) == category_key(parallel[i]);
    std::cout << "enumerate monoids <=6: serial " << ts << " s, openmp " << tp << " s, "
              << serial.size() << " categories, outputs " << (same ? "identical" : "DIFFER")
              << "\n";
  }

  {
    const CategoryBounds bounds{2, 4};
    std::vector<FiniteCategory> fast, naive;
    const double tf = time_s([&] { fast = enumerate_categories_list(bounds, false); });
    const double tn = time_s([&] { naive = naive_enumerate_categories(bounds); });
    bool same = fast.size() == naive.size();
    std::cout << "enumerate (2,4): orderly " << tf << " s, naive reference " << tn << " s, "
              << fast.size() << " vs " << naive.size() << " categories "
              << (same ? "(equal)" : "(DIFFER)") << "\n";
  }

  {
    const SweepBounds bounds{{2, 4}, {2, 5}};
    SelftestResult serial, parallel;
    const double ts = time_s([&] { serial = run_selftest(bounds, false); });
    const double tp = time_s([&] { parallel = run_selftest(bounds, true); });
    std::cout << "selftest sweep (2,4): serial " << ts << " s, openmp " << tp << " s, reports "
              << (serial.report_text == parallel.report_text ? "identical" : "DIFFER") << "\n";
  }
  return 0;
}
