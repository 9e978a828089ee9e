#include "cli.hpp"

int main(int argc, char** argv) { return parabolic::cli::run(argc, argv); }
