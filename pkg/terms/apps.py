# terms/apps.py
from django.apps import AppConfig


class TermsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'terms'

    def ready(self):
        """Apply the configured identity-token mode.

        :return: None
        """
        from terms.conf import deterministic_ids
        from terms.core import use_deterministic_ids

        use_deterministic_ids(deterministic_ids())
