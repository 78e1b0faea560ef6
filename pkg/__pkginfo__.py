#  This file is managed by 'repo_helper'. Don't edit it directly.

__all__ = ["extras_require"]

extras_require = {
		"cli": ["click>=8.0.0", "consolekit>=1.4.1", "sdjson>=0.3.1"],
		"all": ["click>=8.0.0", "consolekit>=1.4.1", "sdjson>=0.3.1"]
		}
