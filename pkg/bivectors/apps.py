from django.apps import AppConfig


class BivectorsConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'bivectors'
