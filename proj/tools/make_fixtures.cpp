// Writes the bundled mesh fixtures into a directory (default data/fixtures).
#include <filesystem>
#include <iostream>
#include <random>

#include "cubetile/fixtures.hpp"
#include "cubetile/io.hpp"

int main(int argc, char** argv) {
  namespace fx = cubetile::fixtures;
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data/fixtures";
  std::filesystem::create_directories(dir);

  auto weighted = fx::cube6();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  weighted.weights.emplace();
  for (std::size_t v = 0; v < weighted.vertex_count; ++v) weighted.weights->push_back(w(rng));

  const std::pair<const char*, cubetile::Triangulation> meshes[] = {
      {"cube6", fx::cube6()},
      {"cube6_weighted", weighted},
      {"hourglass", fx::hourglass()},
      {"grid211", fx::kuhn_grid(2, 1, 1)},
      {"grid222", fx::kuhn_grid(2, 2, 2)},
      {"grid222_r7", fx::kuhn_grid(2, 2, 2, 7)},
      {"grid333", fx::kuhn_grid(3, 3, 3)},
      {"cube6_split8", fx::bisect_edges(fx::cube6(), 8, 3)},
      {"grid211_split6", fx::bisect_edges(fx::kuhn_grid(2, 1, 1), 6, 5)},
      {"grid221_r3_split6", fx::bisect_edges(fx::kuhn_grid(2, 2, 1, 3), 6, 11)},
  };
  for (const auto& [name, t] : meshes) {
    const auto path = (dir / (std::string(name) + ".mesh")).string();
    cubetile::write_file_atomic(path, cubetile::save_triangulation(t));
    std::cout << path << "\n";
  }
}
