"""Binary graph cache."""
