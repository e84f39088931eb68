#include "purcellkit/cli.hpp"

int main(int argc, char** argv) { return purcellkit::cli::run(argc, argv); }
