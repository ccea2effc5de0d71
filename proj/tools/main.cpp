#include "cli.hpp"

int main(int argc, char** argv) { return tbasis::cli::run(argc, argv); }
