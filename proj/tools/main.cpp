#include "qcong/cli.hpp"

int main(int argc, char** argv) { return qcong::run_cli(argc, argv); }
