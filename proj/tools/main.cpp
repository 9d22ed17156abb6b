#include "cli.hpp"

int main(int argc, char** argv) { return gmatch::cli::run(argc, argv); }
