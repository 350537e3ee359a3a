// Writes the reference machines to JSON files in the given directory.

#include <filesystem>
#include <iostream>

#include "qfa/examples.hpp"
#include "qfa/serialization.hpp"

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <dir>\n";
    return 1;
  }
  const std::filesystem::path dir(argv[1]);
  std::filesystem::create_directories(dir);
  qfa::save_machine(dir / "footnote2.json", qfa::examples::mm_a_ab_star());
  qfa::save_machine(dir / "footnote2_b_accepts.json", qfa::examples::mm_a_ab_star(true));
  qfa::save_machine(dir / "ab_star_dfa.json", qfa::examples::dfa_a_ab_star());
  qfa::save_machine(dir / "swap_pa.json", qfa::examples::pa_swap());
  qfa::save_machine(dir / "uniform_pa.json", qfa::examples::pa_uniform());
  return 0;
}
