#include "momentkit/cli_app.hpp"

int main(int argc, char** argv) { return momentkit::runCli(argc, argv); }
