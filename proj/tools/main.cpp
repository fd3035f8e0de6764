
#include <iostream>

#include "app.hpp"

int main(int argc, char** argv) {
  return colombeau::app::main(argc, argv, std::cout, std::cerr);
}
