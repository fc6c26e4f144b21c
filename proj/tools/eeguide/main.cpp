#include "cli.hpp"

int main(int argc, char** argv) { return eeguide::cli::run(argc, argv); }
