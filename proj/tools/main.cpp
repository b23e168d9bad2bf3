#include "commands.hpp"

int main(int argc, char** argv) { return prcis::cli::run(argc, argv); }
