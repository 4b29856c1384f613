#include "gwl/experiments.hpp"

int main(int argc, char** argv) { return gwl::run_cli(argc, argv); }
