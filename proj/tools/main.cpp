#include "heunkit/cli.hpp"

int main(int argc, char** argv) { return heunkit::cli::main(argc, argv); }
