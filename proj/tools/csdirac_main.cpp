#include "csdirac/cli.hpp"

int main(int argc, char** argv) { return csdirac::cli::run(std::vector<std::string>(argv, argv + argc)); }
