// Writes the data/ surface documents.

#include <filesystem>
#include <iostream>
#include <string>

#include "fixtures.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <output-dir>\n";
    return 1;
  }
  const std::string dir = argv[1];
  try {
    std::filesystem::create_directories(dir);
    gcont::save_surface(fixture::split_surface(), dir + "/split_surface.json");
    gcont::save_surface(fixture::crease(), dir + "/crease.json");
    gcont::save_surface(fixture::ring(), dir + "/ring.json");
    gcont::save_surface(fixture::corner(), dir + "/corner.json");
    const auto [a, b] = fixture::strips(4);
    gcont::save_surface(fixture::strip_document(a, "a"), dir + "/strip_a.json");
    gcont::save_surface(fixture::strip_document(b, "b"), dir + "/strip_b.json");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
