"""policyaudit: measure third-party data collection and audit its disclosure."""

__version__ = "0.1.0"
