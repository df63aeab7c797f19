#include "topolabel/synthetic.hpp"

#include "topolabel/random.hpp"

namespace topolabel {

PointCloud make_two_blobs(std::size_t n_per_class, std::size_t dim, double sigma,
                          double separation, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.dim = dim;
    cloud.coords.reserve(2 * n_per_class * dim);
    cloud.ids.reserve(2 * n_per_class);
    cloud.labels.reserve(2 * n_per_class);
    for (int label = 1; label <= 2; ++label) {
        const double center0 = label == 1 ? 0.0 : separation;
        for (std::size_t i = 0; i < n_per_class; ++i) {
            cloud.coords.push_back(center0 + sigma * rng.normal());
            for (std::size_t k = 1; k < dim; ++k) cloud.coords.push_back(sigma * rng.normal());
            cloud.ids.push_back(static_cast<int>(cloud.ids.size()));
            cloud.labels.push_back(label);
        }
    }
    return cloud;
}

} // namespace topolabel
