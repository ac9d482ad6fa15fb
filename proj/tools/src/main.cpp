#include "commands.hpp"

int main(int argc, char** argv) { return antbif::cli::run(argc, argv); }
