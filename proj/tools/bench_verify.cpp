// Compares the serial and the OpenMP family-verification paths on the
// same workload and reports wall time plus speedup. The two runs must
// produce byte-identical reports.

#include <chrono>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fig/verify.hpp"

using namespace fig;

namespace {

double run_ms(FamilySpec spec, bool parallel, std::string &report) {
    spec.parallel = parallel;
    auto t0 = std::chrono::steady_clock::now();
    auto rep = check_equivalence(spec);
    auto dt = std::chrono::duration<double, std::milli>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    report = report_to_json(rep, false);
    return dt;
}

void bench(const char *name, const FamilySpec &spec) {
    std::string serial_report, parallel_report;
    double serial = run_ms(spec, false, serial_report);
    double parallel = run_ms(spec, true, parallel_report);
    std::cout << name << ": serial " << serial << " ms, parallel " << parallel
              << " ms, speedup " << (parallel > 0 ? serial / parallel : 0) << "x, reports "
              << (serial_report == parallel_report ? "identical" : "DIFFER") << "\n";
}

} // namespace

int main() {
#ifdef _OPENMP
    std::cout << "openmp threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "openmp: not enabled (serial fallback)\n";
#endif

    FamilySpec ubik;
    ubik.family = Family::Ubik;
    ubik.block_sizes = {2, 2};
    ubik.clause_min = 1;
    ubik.clause_max = 2;
    ubik.exhaustive = true;
    bench("ubik exhaustive x2 y2 c<=2", ubik);

    FamilySpec spipuf;
    spipuf.family = Family::Spipuf;
    spipuf.count = 200;
    spipuf.seed = 1;
    bench("spipuf 200 seeded", spipuf);

    FamilySpec tepgfu;
    tepgfu.family = Family::Tepgfu;
    tepgfu.count = 100;
    tepgfu.seed = 1;
    bench("tepgfu 100 seeded", tepgfu);

    FamilySpec umcn;
    umcn.family = Family::Umcn;
    umcn.block_sizes = {1, 1, 1};
    umcn.clause_min = 1;
    umcn.clause_max = 2;
    umcn.count = 20;
    umcn.seed = 1;
    bench("umcn 20 seeded", umcn);
    return 0;
}
