#include "cqc/cli.hpp"

int main(int argc, char** argv) { return cqc::cli::run(argc, argv); }
