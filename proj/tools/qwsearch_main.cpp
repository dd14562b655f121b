#include "qwsearch/cli.hpp"

int main(int argc, char** argv) { return qwsearch::cli::main(argc, argv); }
