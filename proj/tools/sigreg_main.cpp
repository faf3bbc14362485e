#include "sigreg/cli.hpp"

int main(int argc, char** argv) { return sigreg::cli::run(argc, argv); }
