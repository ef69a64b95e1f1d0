from django.apps import AppConfig


class GroupcorrConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'groupcorr'
