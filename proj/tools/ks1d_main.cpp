#include "ks1d/commands.hpp"

int main(int argc, char** argv) { return ks1d::cli_main(argc, argv); }
