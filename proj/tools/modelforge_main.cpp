#include "modelforge/search.hpp"

int main(int argc, char** argv) {
  return modelforge::search::modelforge_main(argc, argv);
}
