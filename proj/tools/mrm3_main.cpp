#include "mrm3/app.hpp"

int main(int argc, char **argv) { return mrm3::app::cli_main(argc, argv); }
