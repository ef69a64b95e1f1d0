from django.apps import AppConfig


class CaminaConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'camina'
    verbose_name = 'Camina algebras and rank subspaces'
