#include "steinitz/cli.hpp"

int main(int argc, char** argv) { return steinitz::cli::run(argc, argv); }
