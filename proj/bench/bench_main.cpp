// Compares the OpenMP kernels against their serial reference
// implementations: wall time plus an exact-equality check, since both
// paths are contractually bit-identical.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "topolabel/annotator.hpp"
#include "topolabel/point_cloud.hpp"
#include "topolabel/synthetic.hpp"

namespace {

using namespace topolabel;

template <typename F> double best_ms(F&& body, int repeat) {
    double best = 1e300;
    for (int r = 0; r < repeat; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                .count();
        if (ms < best) best = ms;
    }
    return best;
}

bool same_double(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same_decisions(const std::vector<LabelDecision>& a, const std::vector<LabelDecision>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].point_id != b[i].point_id || a[i].outcome != b[i].outcome ||
            !same_double(a[i].d1, b[i].d1) || !same_double(a[i].d2, b[i].d2) ||
            a[i].error != b[i].error)
            return false;
    return true;
}

void print_row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-24s %10.2f ms %10.2f ms   x%.2f   identical: %s\n", name, serial_ms,
                parallel_ms, parallel_ms > 0 ? serial_ms / parallel_ms : 0.0,
                identical ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    std::size_t points = 1500; // pairwise-distance benchmark size
    std::size_t labeled = 25;  // per class, annotation benchmark
    std::size_t queries = 40;
    int repeat = 3;
    for (int i = 1; i < argc; i += 2) {
        const std::string flag = argv[i];
        if (i + 1 >= argc) {
            std::fprintf(stderr, "missing value for %s\n", flag.c_str());
            return 1;
        }
        const long value = std::atol(argv[i + 1]);
        if (flag == "--points") points = static_cast<std::size_t>(value);
        else if (flag == "--labeled") labeled = static_cast<std::size_t>(value);
        else if (flag == "--queries") queries = static_cast<std::size_t>(value);
        else if (flag == "--repeat") repeat = static_cast<int>(value);
        else {
            std::fprintf(stderr,
                         "usage: topolabel_bench [--points N] [--labeled N] [--queries N] "
                         "[--repeat N]\n");
            return 1;
        }
    }

#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both columns run the serial path\n");
#endif
    std::printf("%-24s %13s %13s\n", "kernel", "serial", "parallel");

    bool all_identical = true;
    {
        const PointCloud cloud = make_two_blobs(points / 2, 8, 0.5, 10.0, 7);
        DistanceMatrix serial_out, parallel_out;
        const double serial_ms =
            best_ms([&] { serial_out = pairwise_distances_serial(cloud); }, repeat);
        const double parallel_ms =
            best_ms([&] { parallel_out = pairwise_distances(cloud); }, repeat);
        const bool identical = serial_out.entries == parallel_out.entries;
        all_identical = all_identical && identical;
        print_row("pairwise_distances", serial_ms, parallel_ms, identical);
    }
    {
        PointCloud train = make_two_blobs(labeled, 3, 0.3, 10.0, 11);
        PointCloud query = make_two_blobs(queries / 2 + queries % 2, 3, 0.3, 10.0, 13);
        query.labels.clear();
        const LabelSplit split = split_by_label(train);
        AnnotatorConfig config;
        config.threshold = 0.8;
        const Annotator annotator(split.class1, split.class2, config);

        std::vector<LabelDecision> serial_out, parallel_out;
        const double serial_ms = best_ms([&] { serial_out = annotator.annotate_serial(query); },
                                         repeat);
        const double parallel_ms = best_ms([&] { parallel_out = annotator.annotate(query); },
                                           repeat);
        const bool identical = same_decisions(serial_out, parallel_out);
        all_identical = all_identical && identical;
        print_row("annotate", serial_ms, parallel_ms, identical);
    }

    if (!all_identical) {
        std::fprintf(stderr, "parallel output diverged from the serial reference\n");
        return 2;
    }
    return 0;
}
