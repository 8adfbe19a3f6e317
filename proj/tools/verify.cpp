#include <iostream>

#include "fueterlab/harness.hpp"

int main(int argc, char** argv) { return fueterlab::runVerifyCli(argc, argv, std::cout, std::cerr); }
