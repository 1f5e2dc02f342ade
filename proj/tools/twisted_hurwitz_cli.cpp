#include "twisted_hurwitz/cli.hpp"

int main(int argc, char** argv) { return twisted_hurwitz::run_cli(argc, argv); }
