// Throughput comparison of the serial reference path runner against the
// OpenMP kernel on catalog models, and a bitwise agreement check of the
// per-path outputs.
#include "gridsde/catalog.hpp"
#include "gridsde/parallel.hpp"
#include "gridsde/solvers.hpp"

#include <chrono>
#include <cstring>
#include <iostream>

using namespace gridsde;

namespace {

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename Fn>
double time_run(Fn&& fn) {
    const double t0 = now_s();
    fn();
    return now_s() - t0;
}

}  // namespace

int main(int argc, char** argv) {
    std::size_t n_paths = 20000;
    if (argc > 1) n_paths = std::strtoull(argv[1], nullptr, 10);

    std::cout << "paths per run: " << n_paths << ", workers: " << mc::worker_count() << "\n";
    for (const auto& info : catalog_list()) {
        const ModelSpec model = make_model(info.id);
        const auto cc = compose_policy(model);
        const Partition partition = Partition::uniform(1.0, 64);
        auto one_path = [&](std::size_t i) {
            const auto noise = make_grid_noise(model, partition, 1.0 / 64, 42, i);
            return euler_grid_sampling(cc, noise).terminal()[0];
        };

        std::vector<double> serial_out, parallel_out;
        const double t_serial =
            time_run([&] { serial_out = mc::run_paths_serial(n_paths, one_path); });
        const double t_parallel =
            time_run([&] { parallel_out = mc::run_paths(n_paths, one_path); });

        const bool identical = serial_out == parallel_out;
        std::cout << info.id << ": serial " << t_serial << " s (" << n_paths / t_serial
                  << " paths/s), openmp " << t_parallel << " s (" << n_paths / t_parallel
                  << " paths/s), speedup " << t_serial / t_parallel
                  << (identical ? ", outputs bitwise identical" : ", OUTPUTS DIFFER") << "\n";
        if (!identical) return 1;
    }
    return 0;
}
