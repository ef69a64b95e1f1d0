from rest_framework import serializers

from .models import CampaignRun


class CampaignRunSerializer(serializers.ModelSerializer):
    """Serializer for recorded campaign runs (read operations)"""
    status_display = serializers.CharField(source='get_status_display', read_only=True)

    class Meta:
        model = CampaignRun
        fields = [
            'id',
            'theorem_id',
            'field_token',
            'seed',
            'budget',
            'status',
            'status_display',
            'scanned',
            'passed',
            'failed',
            'skipped',
            'wall_time',
            'report',
            'created_at',
            'updated_at',
        ]
        read_only_fields = ['id', 'created_at', 'updated_at']
