#include "modelforge/search.hpp"

int main(int argc, char** argv) {
  return modelforge::search::anldp_main(argc, argv);
}
