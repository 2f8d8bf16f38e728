/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The smlp authors
 */

#include <smlp/cli.hh>

int main(int argc, char **argv)
{
	return smlp::cli_main(argc, argv);
}
